#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace subclassical {

using complexd = std::complex<double>;

/**
 * Dense row-major complex matrix.
 *
 * This is the single carrier type for unitaries, observables, density
 * matrices and Choi matrices. Sizes stay in the low hundreds, so the
 * implementation favours clarity over blocking; all operations are pure
 * and values are safe to share read-only across threads.
 *
 * Tensor-product index convention: on a product space the first (system)
 * factor is the slow index and the second (environment) factor the fast
 * one, i.e. basis order |x,y> with y varying fastest.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<double>& d);
    static ComplexMatrix diagonal(const std::vector<complexd>& d);
    /// Row-major initializer, e.g. {{1,0},{0,1}}.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complexd>> rows);
    /// |i><j| on an n-dimensional space.
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    complexd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<complexd>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    complexd trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(complexd scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(complexd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, complexd s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    /// max_ij |a_ij|
    double max_abs() const;
    /// max_ij |a_ij - b_ij|; matrices must have equal shape.
    double distance_max(const ComplexMatrix& other) const;
    /// max row sum of moduli (operator inf-norm bound, used for matexp scaling).
    double inf_norm() const;
    double frobenius_norm() const;

    bool all_finite() const;
    bool approx_equal(const ComplexMatrix& other, double tol) const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    /// max |a_ij| over i != j.
    double offdiag_max_abs() const;
    /// max |a_ii| over i.
    double diag_max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> data_;
};

/**
 * Nonnegative weights summing to one. Entries in [-1e-12, 0) are clamped
 * to zero on construction; anything worse is rejected.
 */
class ProbabilityVector {
public:
    static ProbabilityVector validated(std::vector<double> weights, double sum_tol = 1e-12);
    static ProbabilityVector point_mass(std::size_t dim, std::size_t at);
    static ProbabilityVector uniform(std::size_t dim);

    std::size_t dim() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    bool is_point_mass_at(std::size_t at, double tol = 1e-12) const;

private:
    explicit ProbabilityVector(std::vector<double> weights) : weights_(std::move(weights)) {}
    std::vector<double> weights_;
};

} // namespace subclassical
