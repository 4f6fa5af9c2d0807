// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/util/rng.hpp"

#include "chainpulse/util/error.hpp"

#include <cmath>
#include <numbers>

namespace chainpulse {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        word = splitmix64(s);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double Rng::exponential(double mean) {
    if (!(mean > 0.0)) {
        throw Error("bad-rate", "exponential sampler requires mean > 0");
    }
    double u = 0.0;
    do {
        u = next_double();
    } while (u == 0.0); // keep gaps strictly positive
    return -mean * std::log(1.0 - u);
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_normal_;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

double Rng::lognormal(double log_mean, double log_sd) {
    return std::exp(log_mean + log_sd * normal());
}

std::size_t Rng::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw Error("bad-weights", "categorical weights must be nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw Error("bad-weights", "categorical weights must not all be zero");
    }
    const double target = next_double() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cumulative += weights[i];
        if (target < cumulative) {
            return i;
        }
    }
    return weights.empty() ? 0 : weights.size() - 1;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw Error("bad-range", "below(n) requires n > 0");
    }
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = 0;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

Rng Rng::substream(std::uint64_t label) const {
    std::uint64_t mix = state_[0];
    mix ^= splitmix64(label);
    return Rng(mix);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t s = seed;
    std::uint64_t l = label;
    return splitmix64(s) ^ splitmix64(l);
}

} // namespace chainpulse
