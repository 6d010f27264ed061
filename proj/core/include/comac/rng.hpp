// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_RNG_HPP
#define COMAC_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "comac/cdiag.hpp"

namespace comac::rng {

// Stream tags keep the per-purpose substreams of one master seed disjoint.
inline constexpr std::uint64_t kChannelStream = 0x636861;
inline constexpr std::uint64_t kNoiseStream = 0x6e6f69;
inline constexpr std::uint64_t kSymbolStream = 0x73796d;

/// Derives a substream seed from a master seed and an index path such as
/// (stream tag, trial, symbol, node). Every random draw in the library is
/// keyed this way, so results are reproducible bit-for-bit from
/// (seed, index path) regardless of evaluation order or worker count.
std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// A seeded source of uniform/Gaussian variates.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}

    double uniform();                    // U[0, 1)
    double gauss();                      // N(0, 1)
    cplx cgauss(double variance);        // CN(0, variance)

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace comac::rng

#endif  // COMAC_RNG_HPP
