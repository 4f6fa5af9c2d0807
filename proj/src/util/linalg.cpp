// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/util/linalg.hpp"

#include "chainpulse/util/error.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace chainpulse {

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) {
        throw Error("bad-system", "solve_linear requires a square system");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double candidate = std::abs(a.at(r, col));
            if (candidate > best) {
                best = candidate;
                pivot = r;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best)) {
            throw Error("singular-system", "linear system is singular or ill-formed");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a.at(pivot, c), a.at(col, c));
            }
            std::swap(b[pivot], b[col]);
        }
        const double inv = 1.0 / a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a.at(r, col) * inv;
            if (factor == 0.0) {
                continue;
            }
            a.at(r, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) {
                a.at(r, c) -= factor * a.at(col, c);
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            acc -= a.at(i, c) * x[c];
        }
        x[i] = acc / a.at(i, i);
    }
    return x;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * y[i];
    }
    return acc;
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        return 0.0;
    }
    const double m = mean(values);
    double acc = 0.0;
    for (double v : values) {
        acc += (v - m) * (v - m);
    }
    return acc / static_cast<double>(n - 1);
}

} // namespace chainpulse
