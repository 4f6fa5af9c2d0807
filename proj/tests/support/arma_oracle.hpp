// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_TESTS_SUPPORT_ARMA_ORACLE_HPP
#define CHAINPULSE_TESTS_SUPPORT_ARMA_ORACLE_HPP

#include "chainpulse/util/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chainpulse::test {

// Reference ARMA generator, independent of the fitting code. Uses the
// expanded-sum convention with plus signs on the MA terms:
//   z_t = sum_i phi_i z_{t-i} + sum_j theta_j eps_{t-j} + eps_t,  y = z + mu
inline std::vector<double> simulate_arma(std::span<const double> phi,
                                        std::span<const double> theta, double mu, double sigma,
                                        std::size_t n, std::uint64_t seed,
                                        std::size_t burn_in = 500) {
    Rng rng(seed);
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    std::vector<double> z(burn_in + n, 0.0);
    std::vector<double> eps(burn_in + n, 0.0);
    for (std::size_t t = 0; t < z.size(); ++t) {
        eps[t] = sigma * rng.normal();
        double value = eps[t];
        for (std::size_t i = 1; i <= p && i <= t; ++i) {
            value += phi[i - 1] * z[t - i];
        }
        for (std::size_t j = 1; j <= q && j <= t; ++j) {
            value += theta[j - 1] * eps[t - j];
        }
        z[t] = value;
    }
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = z[burn_in + t] + mu;
    }
    return out;
}

} // namespace chainpulse::test

#endif // CHAINPULSE_TESTS_SUPPORT_ARMA_ORACLE_HPP
