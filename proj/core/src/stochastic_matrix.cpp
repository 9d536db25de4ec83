#include "subclassical/stochastic_matrix.hpp"

#include <cmath>
#include <string>

#include "subclassical/errors.hpp"

namespace subclassical {

StochasticMatrix StochasticMatrix::validated(std::vector<std::vector<double>> rows, double row_tol) {
    const std::size_t n = rows.size();
    if (n == 0) throw ValidationError("not stochastic: empty matrix");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        if (rows[x].size() != n)
            throw ValidationError("not stochastic: row " + std::to_string(x) + " has wrong length");
        double sum = 0.0;
        for (double v : rows[x]) {
            if (!std::isfinite(v))
                throw ValidationError("not stochastic: row " + std::to_string(x) + " has non-finite entry");
            if (v < 0.0) {
                if (v < -1e-12)
                    throw ValidationError("not stochastic: row " + std::to_string(x) + " has negative entry");
                v = 0.0;
            }
            sum += v;
            flat.push_back(v);
        }
        if (std::abs(sum - 1.0) > row_tol)
            throw ValidationError("not stochastic: row " + std::to_string(x) + " sums to " +
                                  std::to_string(sum));
    }
    return StochasticMatrix(n, std::move(flat));
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) flat[i * n + i] = 1.0;
    return StochasticMatrix(n, std::move(flat));
}

std::vector<std::vector<double>> StochasticMatrix::rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) out[x][y] = (*this)(x, y);
    return out;
}

double StochasticMatrix::distance_max(const StochasticMatrix& other) const {
    if (n_ != other.n_) throw ValidationError("stochastic matrix size mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
    return m;
}

double StochasticMatrix::column_sum_defect() const {
    double m = 0.0;
    for (std::size_t y = 0; y < n_; ++y) {
        double s = 0.0;
        for (std::size_t x = 0; x < n_; ++x) s += (*this)(x, y);
        m = std::max(m, std::abs(s - 1.0));
    }
    return m;
}

ComplexMatrix StochasticMatrix::as_complex() const {
    ComplexMatrix m(n_, n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) m(x, y) = (*this)(x, y);
    return m;
}

} // namespace subclassical
