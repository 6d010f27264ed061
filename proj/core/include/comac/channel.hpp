// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#ifndef COMAC_CHANNEL_HPP
#define COMAC_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "comac/cdiag.hpp"
#include "comac/rng.hpp"

namespace comac {

enum class FadingModel { kRayleighIid };

struct ChannelConfig {
    int nodes = 1;          // K
    int subcarriers = 1;    // N
    int ofdm_symbols = 1;   // T_s
    FadingModel fading = FadingModel::kRayleighIid;
    std::uint64_t seed = 0;
};

/// One realization of the per-node per-symbol channel matrices H_k[m].
/// Channels are constant within an OFDM symbol and independent across
/// symbols (block fading), with i.i.d. unit-variance circularly-symmetric
/// complex Gaussian entries per subcarrier. Immutable after generation.
class ChannelSet {
public:
    ChannelSet(int nodes, int subcarriers, int symbols, std::vector<CDiag> h);

    int nodes() const { return nodes_; }
    int subcarriers() const { return subcarriers_; }
    int symbols() const { return symbols_; }

    /// H_k[m], with 0-based symbol index m and node index k.
    const CDiag& at(int m, int k) const;

private:
    int nodes_;
    int subcarriers_;
    int symbols_;
    std::vector<CDiag> h_;  // symbol-major: h_[m * nodes_ + k]
};

struct NoiseModel {
    double variance = 0.0;  // sigma_n^2 per complex entry, split re/im
};

ChannelSet sample_channels(const ChannelConfig& cfg);

/// N i.i.d. CN(0, variance) entries from the given stream. variance = 0
/// yields the zero matrix (the stream is advanced identically either way).
CDiag sample_noise(int n_dim, const NoiseModel& noise, rng::Stream& stream);

/// Eb/N0 in dB -> noise variance, under unit transmit-symbol energy:
/// sigma_n^2 = 10^(-dB/10).
double ebno_to_noise_var(double ebno_db);

/// Sum channel H_s = sum_k H_k[m].
CDiag sum_channel(const ChannelSet& ch, int m);

/// Effective channel G = sum_k lambda_min(Sigma_k^2) U_k U_k^H built from
/// the per-node SVDs. For diagonal channels under the pinned phase
/// convention this is a real nonnegative multiple of the identity.
CDiag effective_channel_g(const ChannelSet& ch, int m);

}  // namespace comac

#endif  // COMAC_CHANNEL_HPP
