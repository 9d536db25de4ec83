#pragma once

#include <cstddef>
#include <vector>

#include "subclassical/complex_matrix.hpp"

namespace subclassical {

/**
 * Row-stochastic nonnegative real matrix on a finite state set {0..n-1}.
 * Construction validates: entries >= -1e-12 (clamped to 0) and each row
 * summing to 1 within row_tol.
 */
class StochasticMatrix {
public:
    static StochasticMatrix validated(std::vector<std::vector<double>> rows, double row_tol = 1e-10);
    static StochasticMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double operator()(std::size_t x, std::size_t y) const { return entries_[x * n_ + y]; }
    const std::vector<double>& flat() const { return entries_; }
    std::vector<std::vector<double>> rows() const;

    double distance_max(const StochasticMatrix& other) const;
    /// max |column sum - 1|; zero for doubly stochastic matrices.
    double column_sum_defect() const;

    ComplexMatrix as_complex() const;

private:
    StochasticMatrix(std::size_t n, std::vector<double> entries)
        : n_(n), entries_(std::move(entries)) {}
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

} // namespace subclassical
