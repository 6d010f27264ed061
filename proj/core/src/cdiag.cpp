// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/cdiag.hpp"

#include <cmath>

#include "comac/op_count.hpp"

namespace comac {

namespace {

void require_same_dim(const CDiag& a, const CDiag& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
}

}  // namespace

namespace ops {
Tally& tally() {
    thread_local Tally t;
    return t;
}
}  // namespace ops

NearSingularError::NearSingularError(std::size_t index, double magnitude, int node)
    : std::runtime_error("near-singular diagonal entry at index " + std::to_string(index) +
                         (node >= 0 ? " (node " + std::to_string(node) + ")" : "") +
                         ", |entry| = " + std::to_string(magnitude)),
      index_(index),
      node_(node) {}

CDiag::CDiag(std::vector<cplx> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!std::isfinite(entries_[i].real()) || !std::isfinite(entries_[i].imag())) {
            throw std::invalid_argument("CDiag: non-finite entry at index " + std::to_string(i));
        }
    }
}

CDiag CDiag::identity(std::size_t n) {
    return CDiag::constant(n, cplx{1.0, 0.0});
}

CDiag CDiag::constant(std::size_t n, cplx value) {
    return CDiag(std::vector<cplx>(n, value));
}

CDiag dmul(const CDiag& a, const CDiag& b) {
    require_same_dim(a, b, "dmul");
    const std::size_t n = a.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
    ops::mul(4 * n);
    ops::add(2 * n);
    return CDiag(std::move(out));
}

CDiag dadd(const CDiag& a, const CDiag& b) {
    require_same_dim(a, b, "dadd");
    const std::size_t n = a.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
    ops::add(2 * n);
    return CDiag(std::move(out));
}

CDiag dinv(const CDiag& a, double eps) {
    const std::size_t n = a.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(a[i]);
        if (mag <= eps) throw NearSingularError(i, mag);
        out[i] = 1.0 / a[i];
    }
    ops::sqrt(n);
    ops::mul(3 * n);
    ops::add(n);
    ops::div(2 * n);
    return CDiag(std::move(out));
}

cplx trace(const CDiag& a) {
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i];
    ops::add(2 * a.dim());
    return sum;
}

double fro_norm_sq(const CDiag& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::norm(a[i]);
    ops::mul(2 * a.dim());
    ops::add(2 * a.dim());
    return sum;
}

SvdTriple svd_diag(const CDiag& a) {
    const std::size_t n = a.dim();
    std::vector<cplx> u(n), sigma(n), v(n, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(a[i]);
        sigma[i] = cplx{mag, 0.0};
        u[i] = mag > 0.0 ? a[i] / mag : cplx{1.0, 0.0};
    }
    ops::mul(2 * n);
    ops::add(n);
    ops::sqrt(n);
    ops::div(2 * n);
    return SvdTriple{CDiag(std::move(u)), CDiag(std::move(sigma)), CDiag(std::move(v))};
}

EigPair eig_diag(const CDiag& a) {
    return EigPair{CDiag::identity(a.dim()), a};
}

double min_singular_sq(const CDiag& a) {
    if (a.dim() == 0) return 0.0;
    double best = std::norm(a[0]);
    for (std::size_t i = 1; i < a.dim(); ++i) best = std::min(best, std::norm(a[i]));
    ops::mul(2 * a.dim());
    ops::add(a.dim());
    return best;
}

CDiag dconj(const CDiag& a) {
    const std::size_t n = a.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::conj(a[i]);
    return CDiag(std::move(out));
}

CDiag dscale(const CDiag& a, cplx c) {
    const std::size_t n = a.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c * a[i];
    ops::mul(4 * n);
    ops::add(2 * n);
    return CDiag(std::move(out));
}

}  // namespace comac
