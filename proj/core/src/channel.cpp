// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace comac {

ChannelSet::ChannelSet(int nodes, int subcarriers, int symbols, std::vector<CDiag> h)
    : nodes_(nodes), subcarriers_(subcarriers), symbols_(symbols), h_(std::move(h)) {
    if (nodes_ < 1 || subcarriers_ < 1 || symbols_ < 1) {
        throw std::invalid_argument("ChannelSet: all dimensions must be >= 1");
    }
    if (h_.size() != static_cast<std::size_t>(nodes_) * symbols_) {
        throw std::invalid_argument("ChannelSet: wrong number of channel matrices");
    }
    for (const CDiag& d : h_) {
        if (d.dim() != static_cast<std::size_t>(subcarriers_)) {
            throw std::invalid_argument("ChannelSet: channel matrix dimension mismatch");
        }
    }
}

const CDiag& ChannelSet::at(int m, int k) const {
    if (m < 0 || m >= symbols_ || k < 0 || k >= nodes_) {
        throw std::out_of_range("ChannelSet::at: index out of range (m=" + std::to_string(m) +
                                ", k=" + std::to_string(k) + ")");
    }
    return h_[static_cast<std::size_t>(m) * nodes_ + k];
}

ChannelSet sample_channels(const ChannelConfig& cfg) {
    if (cfg.nodes < 1 || cfg.subcarriers < 1 || cfg.ofdm_symbols < 1) {
        throw std::invalid_argument("sample_channels: all dimensions must be >= 1");
    }
    std::vector<CDiag> h;
    h.reserve(static_cast<std::size_t>(cfg.nodes) * cfg.ofdm_symbols);
    for (int m = 0; m < cfg.ofdm_symbols; ++m) {
        for (int k = 0; k < cfg.nodes; ++k) {
            rng::Stream s(rng::derive(cfg.seed, {rng::kChannelStream,
                                                 static_cast<std::uint64_t>(m),
                                                 static_cast<std::uint64_t>(k)}));
            std::vector<cplx> entries(cfg.subcarriers);
            for (int i = 0; i < cfg.subcarriers; ++i) entries[i] = s.cgauss(1.0);
            h.emplace_back(std::move(entries));
        }
    }
    return ChannelSet(cfg.nodes, cfg.subcarriers, cfg.ofdm_symbols, std::move(h));
}

CDiag sample_noise(int n_dim, const NoiseModel& noise, rng::Stream& stream) {
    if (noise.variance < 0.0) {
        throw std::invalid_argument("sample_noise: variance must be >= 0");
    }
    std::vector<cplx> entries(n_dim);
    for (int i = 0; i < n_dim; ++i) entries[i] = stream.cgauss(noise.variance);
    return CDiag(std::move(entries));
}

double ebno_to_noise_var(double ebno_db) {
    return std::pow(10.0, -ebno_db / 10.0);
}

CDiag sum_channel(const ChannelSet& ch, int m) {
    CDiag hs = ch.at(m, 0);
    for (int k = 1; k < ch.nodes(); ++k) hs = dadd(hs, ch.at(m, k));
    return hs;
}

CDiag effective_channel_g(const ChannelSet& ch, int m) {
    const int n = ch.subcarriers();
    CDiag g(static_cast<std::size_t>(n));
    for (int k = 0; k < ch.nodes(); ++k) {
        const SvdTriple svd = svd_diag(ch.at(m, k));
        const double lambda_min = min_singular_sq(svd.sigma);
        const CDiag uuh = dmul(svd.u, dconj(svd.u));
        g = dadd(g, dscale(uuh, cplx{lambda_min, 0.0}));
    }
    return g;
}

}  // namespace comac
