#include "subclassical/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "subclassical/errors.hpp"

namespace subclassical {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, complexd(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<complexd>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<complexd>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ValidationError("ragged rows in matrix literal");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

complexd ComplexMatrix::trace() const {
    complexd t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("matrix shape mismatch in addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("matrix shape mismatch in subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix shape mismatch in product");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const complexd aik = a(i, k);
            if (aik == complexd(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::distance_max(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("matrix shape mismatch in distance");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
        m = std::max(m, std::abs(data_[k] - other.data_[k]));
    return m;
}

double ComplexMatrix::inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && distance_max(other) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (adjoint() * (*this)).distance_max(identity(rows_)) <= tol;
}

double ComplexMatrix::offdiag_max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

double ComplexMatrix::diag_max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m = std::max(m, std::abs((*this)(i, i)));
    return m;
}

ProbabilityVector ProbabilityVector::validated(std::vector<double> weights, double sum_tol) {
    if (weights.empty()) throw ValidationError("probability vector must be non-empty");
    double sum = 0.0;
    for (auto& w : weights) {
        if (!std::isfinite(w)) throw ValidationError("probability vector entry not finite");
        if (w < 0.0) {
            if (w < -1e-12) throw ValidationError("probability vector entry negative");
            w = 0.0;
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > sum_tol)
        throw ValidationError("probability vector does not sum to one");
    return ProbabilityVector(std::move(weights));
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t dim, std::size_t at) {
    if (at >= dim) throw ValidationError("point mass index out of range");
    std::vector<double> w(dim, 0.0);
    w[at] = 1.0;
    return ProbabilityVector(std::move(w));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t dim) {
    if (dim == 0) throw ValidationError("probability vector must be non-empty");
    return ProbabilityVector(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

bool ProbabilityVector::is_point_mass_at(std::size_t at, double tol) const {
    if (at >= dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        const double expect = i == at ? 1.0 : 0.0;
        if (std::abs(weights_[i] - expect) > tol) return false;
    }
    return true;
}

} // namespace subclassical
