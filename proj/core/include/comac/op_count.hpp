// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_OP_COUNT_HPP
#define COMAC_OP_COUNT_HPP

#include <cstdint>

namespace comac::ops {

/// Running tally of real floating-point operations performed by the
/// diagonal-matrix kernels. The `bench` tooling resets the tally, runs a
/// filter construction, and reads it back; everything else can ignore it.
struct Tally {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t divs = 0;
    std::uint64_t sqrts = 0;

    std::uint64_t total() const { return adds + muls + divs + sqrts; }
};

Tally& tally();

inline void add(std::uint64_t n) { tally().adds += n; }
inline void mul(std::uint64_t n) { tally().muls += n; }
inline void div(std::uint64_t n) { tally().divs += n; }
inline void sqrt(std::uint64_t n) { tally().sqrts += n; }

inline void reset() { tally() = Tally{}; }
inline Tally snapshot() { return tally(); }

}  // namespace comac::ops

#endif  // COMAC_OP_COUNT_HPP
