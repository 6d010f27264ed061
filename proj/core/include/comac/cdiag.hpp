// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CDIAG_HPP
#define COMAC_CDIAG_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace comac {

using cplx = std::complex<double>;

/// Thrown when an entry of a diagonal matrix is too close to zero for the
/// requested inversion. Carries the offending diagonal index and, where the
/// caller works per node, the node index.
class NearSingularError : public std::runtime_error {
public:
    NearSingularError(std::size_t index, double magnitude, int node = -1);

    std::size_t index() const { return index_; }
    int node() const { return node_; }

private:
    std::size_t index_;
    int node_;
};

/// Diagonal complex matrix, stored as its diagonal. All matrices in this
/// library (channels, filters, symbols, noise) are diagonal, so every
/// operation below is entrywise. Values are immutable after construction
/// and never admit NaN/Inf entries.
class CDiag {
public:
    CDiag() = default;
    explicit CDiag(std::size_t n) : entries_(n, cplx{0.0, 0.0}) {}
    explicit CDiag(std::vector<cplx> entries);

    static CDiag identity(std::size_t n);
    static CDiag constant(std::size_t n, cplx value);

    std::size_t dim() const { return entries_.size(); }
    const cplx& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<cplx>& entries() const { return entries_; }

    bool operator==(const CDiag& other) const = default;

private:
    std::vector<cplx> entries_;
};

/// SVD of a diagonal matrix, a = u * sigma * v^H. The convention used
/// throughout: sigma_i = |a_i|, the complex phase goes into u (u_i = 1 when
/// a_i = 0), and v = I. Any phase split is a valid SVD; pinning one keeps
/// every construction built on top of it deterministic.
struct SvdTriple {
    CDiag u;
    CDiag sigma;
    CDiag v;
};

/// Eigendecomposition a = q * lambda * q^{-1}. A diagonal matrix is its own
/// eigenvalue matrix in the canonical basis, so q = I and lambda = a.
struct EigPair {
    CDiag q;
    CDiag lambda;
};

inline constexpr double kDefaultSingularEps = 1e-12;

CDiag dmul(const CDiag& a, const CDiag& b);
CDiag dadd(const CDiag& a, const CDiag& b);
CDiag dinv(const CDiag& a, double eps = kDefaultSingularEps);
cplx trace(const CDiag& a);
double fro_norm_sq(const CDiag& a);
SvdTriple svd_diag(const CDiag& a);
EigPair eig_diag(const CDiag& a);
double min_singular_sq(const CDiag& a);

/// Entrywise conjugate (the conjugate transpose of a diagonal matrix).
CDiag dconj(const CDiag& a);
/// Scalar multiple c * a.
CDiag dscale(const CDiag& a, cplx c);

}  // namespace comac

#endif  // COMAC_CDIAG_HPP
