// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/rng.hpp"

#include <cmath>

namespace comac::rng {

namespace {

// splitmix64 finalizer; decorrelates nearby keys.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = mix(seed);
    for (std::uint64_t p : path) state = mix(state ^ mix(p));
    return state;
}

double Stream::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
}

double Stream::gauss() {
    return norm_(gen_);
}

cplx Stream::cgauss(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = gauss();
    const double im = gauss();
    return cplx{s * re, s * im};
}

}  // namespace comac::rng
