// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_UTIL_RNG_HPP
#define CHAINPULSE_UTIL_RNG_HPP

#include <cstdint>
#include <span>

namespace chainpulse {

// xoshiro256++ seeded through splitmix64. The standard library engines and
// distributions are implementation defined, which would break the project's
// bit-identical-output contract across toolchains, so all randomness goes
// through this generator and the explicit samplers below.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    double uniform(double lo, double hi);

    // Exponential with the given mean (mean > 0); strictly positive.
    double exponential(double mean);

    // Standard normal via Box-Muller; one spare value is cached.
    double normal();

    double lognormal(double log_mean, double log_sd);

    // Index drawn proportionally to `weights` (nonnegative, not all zero).
    std::size_t categorical(std::span<const double> weights);

    // Integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n);

    // Independent substream for the given label; used to decouple the
    // consumers of one master seed from each other.
    Rng substream(std::uint64_t label) const;

private:
    std::uint64_t state_[4];
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

// Stable sub-seed derivation so that one master seed can drive several
// independent generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

} // namespace chainpulse

#endif // CHAINPULSE_UTIL_RNG_HPP
