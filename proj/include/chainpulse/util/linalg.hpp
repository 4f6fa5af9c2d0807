// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_UTIL_LINALG_HPP
#define CHAINPULSE_UTIL_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace chainpulse {

// Small dense matrix, row major. The fitting code only ever needs systems of
// a few dozen unknowns, so a plain Gaussian elimination is enough.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves a*x = b by Gaussian elimination with partial pivoting. `a` is taken
// by value and used as scratch. Throws Error("singular-system") when no
// usable pivot remains.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

// x^T * y for equally sized spans.
double dot(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

// Sample variance with denominator n-1; returns 0 for n < 2.
double sample_variance(std::span<const double> values);

} // namespace chainpulse

#endif // CHAINPULSE_UTIL_LINALG_HPP
