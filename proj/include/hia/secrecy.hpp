// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Layered secrecy model: layer assignment, stacked precoder, block-structured
// quadratic forms, exact secrecy rates and their LogSumExp-smoothed surrogates.
//
// Indexing is zero-based throughout: message k = 0 is the lowest-priority
// message, decoded first; users in layer l may decode messages 0..l.

#pragma once

#include "hia/block_diagonal.hpp"
#include "hia/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace hia {

// ---------------------------------------------------------------------------
// Layers and precoders
// ---------------------------------------------------------------------------

class LayerAssignment {
public:
    LayerAssignment() = default;

    explicit LayerAssignment(std::vector<std::vector<int>> members) : members_(std::move(members))
    {
        int m = 0;
        for (const auto& s : members_)
            m += static_cast<int>(s.size());
        layer_of_.assign(m, -1);
        for (int k = 0; k < layers(); ++k) {
            if (members_[k].empty())
                throw ConfigError("LayerAssignment: layer " + std::to_string(k) + " is empty");
            for (int u : members_[k]) {
                if (u < 0 || u >= m)
                    throw ConfigError("LayerAssignment: user index out of range");
                if (layer_of_[u] != -1)
                    throw ConfigError("LayerAssignment: user assigned to more than one layer");
                layer_of_[u] = k;
            }
        }
    }

    /// Users numbered consecutively: layer 0 gets the first sizes[0] users, etc.
    static LayerAssignment from_sizes(std::span<const int> sizes)
    {
        if (sizes.empty())
            throw ConfigError("LayerAssignment: need at least one layer");
        std::vector<std::vector<int>> members;
        int next = 0;
        for (int s : sizes) {
            if (s <= 0)
                throw ConfigError("LayerAssignment: layer sizes must be positive");
            std::vector<int> layer(s);
            std::iota(layer.begin(), layer.end(), next);
            next += s;
            members.push_back(std::move(layer));
        }
        return LayerAssignment(std::move(members));
    }

    static LayerAssignment singletons(int k)
    {
        std::vector<int> sizes(k, 1);
        return from_sizes(sizes);
    }

    int layers() const { return static_cast<int>(members_.size()); }
    int users() const { return static_cast<int>(layer_of_.size()); }
    const std::vector<int>& members(int k) const { return members_[k]; }
    int layer_of(int user) const { return layer_of_[user]; }

    /// Number of users in layers below k (the colluding eavesdropper count).
    int users_below(int k) const
    {
        int g = 0;
        for (int l = 0; l < k; ++l)
            g += static_cast<int>(members_[l].size());
        return g;
    }

    bool all_singleton() const
    {
        return std::all_of(members_.begin(), members_.end(), [](const auto& s) { return s.size() == 1; });
    }

private:
    std::vector<std::vector<int>> members_;
    std::vector<int> layer_of_;
};

/// Stacked precoder [f_0; ...; f_{K-1}] in C^{NK}.
struct PrecoderStack {
    int n_antennas = 0;
    int n_messages = 0;
    CVector f;

    PrecoderStack() = default;
    PrecoderStack(int n, int k) : n_antennas(n), n_messages(k), f(CVector::Zero(n * k)) {}
    PrecoderStack(int n, int k, CVector v) : n_antennas(n), n_messages(k), f(std::move(v))
    {
        if (f.size() != n * k)
            throw ContractViolation("PrecoderStack: vector length must be N*K");
    }

    auto block(int k) { return f.segment(k * n_antennas, n_antennas); }
    auto block(int k) const { return f.segment(k * n_antennas, n_antennas); }

    double norm() const { return f.norm(); }

    PrecoderStack normalized() const
    {
        const double nrm = norm();
        if (!(nrm > 0.0))
            throw DomainError("PrecoderStack: cannot normalize a zero stack");
        return PrecoderStack(n_antennas, n_messages, f / nrm);
    }

    bool is_unit(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }
};

inline void require_unit(const PrecoderStack& s, const char* who)
{
    if (!s.is_unit())
        throw ContractViolation(std::string(who) + ": precoder stack must have unit norm");
}

// ---------------------------------------------------------------------------
// Block-structured quadratic forms
// ---------------------------------------------------------------------------

/// M = blkdiag_j( rank_weight[j] h h^H + cov_weight[j] Phi ) + identity * I_{NK}.
struct BlockQuadForm {
    CVector h;
    std::vector<double> rank_weight;
    CMatrix cov;                       // Phi; empty when unused
    std::vector<double> cov_weight;    // empty when cov is unused
    double identity = 0.0;

    int n() const { return static_cast<int>(h.size()); }
    int k() const { return static_cast<int>(rank_weight.size()); }
    bool has_cov() const { return cov.size() > 0; }

    double value(const CVector& f) const
    {
        const int n_ = n();
        double acc = identity * f.squaredNorm();
        for (int j = 0; j < k(); ++j) {
            const auto fj = f.segment(j * n_, n_);
            if (rank_weight[j] != 0.0)
                acc += rank_weight[j] * std::norm(h.dot(fj));
            if (has_cov() && cov_weight[j] != 0.0)
                acc += cov_weight[j] * fj.dot(cov * fj).real();
        }
        return acc;
    }

    CVector apply(const CVector& f) const
    {
        const int n_ = n();
        CVector out = identity * f;
        for (int j = 0; j < k(); ++j) {
            const auto fj = f.segment(j * n_, n_);
            if (rank_weight[j] != 0.0)
                out.segment(j * n_, n_) += (rank_weight[j] * h.dot(fj)) * h;
            if (has_cov() && cov_weight[j] != 0.0)
                out.segment(j * n_, n_) += cov_weight[j] * (cov * fj);
        }
        return out;
    }

    /// acc += c * M
    void accumulate_into(BlockDiagonal& acc, double c) const
    {
        for (int j = 0; j < k(); ++j) {
            if (rank_weight[j] != 0.0)
                acc.add_rank_one(j, h, c * rank_weight[j]);
            if (has_cov() && cov_weight[j] != 0.0)
                acc.add_matrix(j, cov, c * cov_weight[j]);
        }
        acc.add_identity(c * identity);
    }

    CMatrix dense() const
    {
        BlockDiagonal b(n(), k());
        accumulate_into(b, 1.0);
        return b.dense();
    }
};

/// One Rayleigh quotient f^H num f / f^H den f.
struct QuadFormPair {
    BlockQuadForm num;
    BlockQuadForm den;

    double quotient(const CVector& f) const { return num.value(f) / den.value(f); }
    double log2_quotient(const CVector& f) const
    {
        return (std::log(num.value(f)) - std::log(den.value(f))) / kLn2;
    }
};

inline void check_message_index(int k, int n_messages, const char* who)
{
    if (k < 0 || k >= n_messages)
        throw ContractViolation(std::string(who) + ": message index out of range");
}

/// A: h h^H on blocks k..K-1 plus noise_ratio * I; B: same without block k.
inline QuadFormPair build_ab(int k, const CVector& h, int n, int n_messages, double noise_ratio)
{
    check_message_index(k, n_messages, "build_ab");
    if (h.size() != n)
        throw ContractViolation("build_ab: channel length must equal N");
    QuadFormPair p;
    p.num.h = h;
    p.num.rank_weight.assign(n_messages, 0.0);
    for (int j = k; j < n_messages; ++j)
        p.num.rank_weight[j] = 1.0;
    p.num.identity = noise_ratio;
    p.den = p.num;
    p.den.rank_weight[k] = 0.0;
    return p;
}

/// Colluding pair: C = gamma h h^H on block k, h h^H above, noise_ratio * I;
/// D = gamma * (h h^H above k) + gamma * noise_ratio * I.
inline QuadFormPair build_cd(int k, const CVector& h, int gamma, int n, int n_messages, double noise_ratio)
{
    check_message_index(k, n_messages, "build_cd");
    if (h.size() != n)
        throw ContractViolation("build_cd: channel length must equal N");
    if (k == 0)
        throw DomainError("build_cd: message 0 has no eavesdroppers");
    if (gamma < 1)
        throw DomainError("build_cd: gamma must be >= 1");
    QuadFormPair p;
    p.num.h = h;
    p.num.rank_weight.assign(n_messages, 0.0);
    p.num.rank_weight[k] = gamma;
    for (int j = k + 1; j < n_messages; ++j)
        p.num.rank_weight[j] = 1.0;
    p.num.identity = noise_ratio;

    p.den.h = h;
    p.den.rank_weight.assign(n_messages, 0.0);
    for (int j = k + 1; j < n_messages; ++j)
        p.den.rank_weight[j] = gamma;
    p.den.identity = gamma * noise_ratio;
    return p;
}

/// Robust pair for imperfect CSIT: (h_hat h_hat^H + Phi) on blocks k.., and the
/// denominator keeps Phi on block k.
inline QuadFormPair build_ab_noma(int k, const CVector& h_hat, const CMatrix& phi, int n, int n_messages,
                                  double noise_ratio)
{
    QuadFormPair p = build_ab(k, h_hat, n, n_messages, noise_ratio);
    p.num.cov = phi;
    p.num.cov_weight.assign(n_messages, 0.0);
    for (int j = k; j < n_messages; ++j)
        p.num.cov_weight[j] = 1.0;
    p.den.cov = phi;
    p.den.cov_weight = p.num.cov_weight;
    return p;
}

// ---------------------------------------------------------------------------
// Exact rates
// ---------------------------------------------------------------------------

/// SINR of message k at a receiver with channel h; interference from messages > k only.
inline double message_sinr(int k, const CVector& h, const PrecoderStack& s, double noise_ratio)
{
    const double signal = std::norm(h.dot(s.block(k)));
    double interference = noise_ratio;
    for (int j = k + 1; j < s.n_messages; ++j)
        interference += std::norm(h.dot(s.block(j)));
    return signal / interference;
}

inline double user_rate(int k, const CVector& h, const PrecoderStack& s, double noise_ratio)
{
    check_message_index(k, s.n_messages, "user_rate");
    require_unit(s, "user_rate");
    return std::log2(1.0 + message_sinr(k, h, s, noise_ratio));
}

namespace detail {

inline double legit_min_rate(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                             const PrecoderStack& s, double noise_ratio)
{
    double lo = std::numeric_limits<double>::infinity();
    for (int l = k; l < layers.layers(); ++l)
        for (int u : layers.members(l))
            lo = std::min(lo, std::log2(1.0 + message_sinr(k, channels[u], s, noise_ratio)));
    return lo;
}

inline void check_dims(std::span<const CVector> channels, const LayerAssignment& layers, const PrecoderStack& s)
{
    if (static_cast<int>(channels.size()) != layers.users())
        throw ConfigError("channel count does not match layer assignment");
    if (s.n_messages != layers.layers())
        throw ConfigError("precoder stack message count does not match layer count");
}

} // namespace detail

/// Unclamped non-colluding margin: min legitimate rate - max eavesdropper rate.
inline double secrecy_margin_nc(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                                const PrecoderStack& s, double noise_ratio)
{
    detail::check_dims(channels, layers, s);
    check_message_index(k, s.n_messages, "secrecy_rate_nc");
    require_unit(s, "secrecy_rate_nc");
    const double legit = detail::legit_min_rate(k, channels, layers, s, noise_ratio);
    double wiretap = 0.0;
    for (int l = 0; l < k; ++l)
        for (int u : layers.members(l))
            wiretap = std::max(wiretap, std::log2(1.0 + message_sinr(k, channels[u], s, noise_ratio)));
    return legit - wiretap;
}

inline double secrecy_rate_nc(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                              const PrecoderStack& s, double noise_ratio)
{
    return std::max(0.0, secrecy_margin_nc(k, channels, layers, s, noise_ratio));
}

/// Colluding eavesdropper rate log2(1 + sum of SINRs of all users below layer k).
inline double colluding_wiretap_rate(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                                     const PrecoderStack& s, double noise_ratio)
{
    double sinr = 0.0;
    for (int l = 0; l < k; ++l)
        for (int u : layers.members(l))
            sinr += message_sinr(k, channels[u], s, noise_ratio);
    return std::log2(1.0 + sinr);
}

inline double secrecy_margin_c(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                               const PrecoderStack& s, double noise_ratio)
{
    detail::check_dims(channels, layers, s);
    check_message_index(k, s.n_messages, "secrecy_rate_c");
    require_unit(s, "secrecy_rate_c");
    const double legit = detail::legit_min_rate(k, channels, layers, s, noise_ratio);
    return legit - colluding_wiretap_rate(k, channels, layers, s, noise_ratio);
}

inline double secrecy_rate_c(int k, std::span<const CVector> channels, const LayerAssignment& layers,
                             const PrecoderStack& s, double noise_ratio)
{
    return std::max(0.0, secrecy_margin_c(k, channels, layers, s, noise_ratio));
}

enum class Collusion { NonColluding, Colluding };

inline std::vector<double> secrecy_rates(Collusion mode, std::span<const CVector> channels,
                                         const LayerAssignment& layers, const PrecoderStack& s, double noise_ratio)
{
    std::vector<double> out(s.n_messages);
    for (int k = 0; k < s.n_messages; ++k)
        out[k] = mode == Collusion::Colluding ? secrecy_rate_c(k, channels, layers, s, noise_ratio)
                                              : secrecy_rate_nc(k, channels, layers, s, noise_ratio);
    return out;
}

inline double sum_secrecy_rate(Collusion mode, std::span<const CVector> channels, const LayerAssignment& layers,
                               const PrecoderStack& s, double noise_ratio)
{
    const auto r = secrecy_rates(mode, channels, layers, s, noise_ratio);
    return std::accumulate(r.begin(), r.end(), 0.0);
}

/// Per-message SIC rates without a secrecy constraint: min over users in layers >= k.
/// With singleton layers this is the fixed-order NOMA rate.
inline std::vector<double> multicast_rates(std::span<const CVector> channels, const LayerAssignment& layers,
                                           const PrecoderStack& s, double noise_ratio)
{
    detail::check_dims(channels, layers, s);
    require_unit(s, "multicast_rates");
    std::vector<double> out(s.n_messages);
    for (int k = 0; k < s.n_messages; ++k)
        out[k] = detail::legit_min_rate(k, channels, layers, s, noise_ratio);
    return out;
}

/// Lower-bound rate of message k at a user with estimate h_hat and error covariance phi.
inline double lower_bound_rate(int k, const CVector& h_hat, const CMatrix& phi, const PrecoderStack& s,
                               double noise_ratio)
{
    const double signal = std::norm(h_hat.dot(s.block(k)));
    double interference = noise_ratio;
    for (int j = k + 1; j < s.n_messages; ++j)
        interference += std::norm(h_hat.dot(s.block(j)));
    for (int j = k; j < s.n_messages; ++j)
        interference += s.block(j).dot(phi * s.block(j)).real();
    return std::log2(1.0 + signal / interference);
}

// ---------------------------------------------------------------------------
// LogSumExp
// ---------------------------------------------------------------------------

/// -(1/alpha) ln sum exp(-alpha x_i), max-shifted.
inline double lse_min(std::span<const double> x, double alpha)
{
    if (x.empty())
        throw DomainError("lse_min: empty list");
    if (!(alpha > 0.0))
        throw DomainError("lse_min: alpha must be positive");
    const double lo = *std::min_element(x.begin(), x.end());
    double acc = 0.0;
    for (double v : x)
        acc += std::exp(-alpha * (v - lo));
    return lo - std::log(acc) / alpha;
}

/// (1/alpha) ln sum exp(alpha x_i), max-shifted.
inline double lse_max(std::span<const double> x, double alpha)
{
    if (x.empty())
        throw DomainError("lse_max: empty list");
    if (!(alpha > 0.0))
        throw DomainError("lse_max: alpha must be positive");
    const double hi = *std::max_element(x.begin(), x.end());
    double acc = 0.0;
    for (double v : x)
        acc += std::exp(alpha * (v - hi));
    return hi + std::log(acc) / alpha;
}

/// Gradient weights of lse_min (softmin) / lse_max (softmax); they sum to one.
inline std::vector<double> softmin_weights(std::span<const double> x, double alpha)
{
    const double lo = *std::min_element(x.begin(), x.end());
    std::vector<double> w(x.size());
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        z += (w[i] = std::exp(-alpha * (x[i] - lo)));
    for (double& v : w)
        v /= z;
    return w;
}

inline std::vector<double> softmax_weights(std::span<const double> x, double alpha)
{
    const double hi = *std::max_element(x.begin(), x.end());
    std::vector<double> w(x.size());
    double z = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        z += (w[i] = std::exp(alpha * (x[i] - hi)));
    for (double& v : w)
        v /= z;
    return w;
}

struct SmoothingParams {
    double alpha = 10.0;
    double beta() const { return alpha / kLn2; }
};

// ---------------------------------------------------------------------------
// Smoothed objectives
// ---------------------------------------------------------------------------

enum class WiretapKind {
    None,        // no eavesdropper term (message 0, or security ignored)
    SmoothMax,   // non-colluding: LSE-max of eavesdropper rates
    Colluding,   // log2 of the sum of C/D quotients
};

/// Contribution of one message: weight * (LSE-min of legitimate log-quotients
/// minus the wiretap term).
struct MessageTerm {
    std::vector<QuadFormPair> legit;
    std::vector<QuadFormPair> wiretap;
    WiretapKind kind = WiretapKind::None;
    double weight = 1.0;
};

/// Per-message evaluation: log2 quotients and LSE gradient weights.
struct MessageEval {
    std::vector<double> legit_log2q;
    std::vector<double> wiretap_log2q;
    std::vector<double> legit_w;
    std::vector<double> wiretap_w;
    double legit_term = 0.0;
    double wiretap_term = 0.0;
};

struct ObjectiveEval {
    double value = 0.0;
    std::vector<MessageEval> messages;
};

class SmoothedObjective {
public:
    SmoothedObjective() = default;
    SmoothedObjective(int n, int k, std::vector<MessageTerm> terms) : n_(n), k_(k), terms_(std::move(terms)) {}

    int n_antennas() const { return n_; }
    int n_messages() const { return k_; }
    const std::vector<MessageTerm>& terms() const { return terms_; }
    std::vector<MessageTerm>& terms() { return terms_; }

    ObjectiveEval evaluate(const CVector& f, double alpha) const
    {
        if (f.size() != n_ * k_)
            throw ContractViolation("objective: stack dimension mismatch");
        if (!(f.squaredNorm() > 0.0))
            throw DomainError("objective: zero precoder stack");
        if (!(alpha > 0.0))
            throw DomainError("objective: alpha must be positive");
        ObjectiveEval ev;
        ev.messages.resize(terms_.size());
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            const auto& term = terms_[t];
            auto& m = ev.messages[t];
            m.legit_log2q.reserve(term.legit.size());
            for (const auto& p : term.legit)
                m.legit_log2q.push_back(p.log2_quotient(f));
            m.legit_term = lse_min(m.legit_log2q, alpha);
            m.legit_w = softmin_weights(m.legit_log2q, alpha);
            if (term.kind != WiretapKind::None && !term.wiretap.empty()) {
                for (const auto& p : term.wiretap)
                    m.wiretap_log2q.push_back(p.log2_quotient(f));
                // log2(sum 2^x) is the LSE-max with alpha = ln 2.
                const double a = term.kind == WiretapKind::Colluding ? kLn2 : alpha;
                m.wiretap_term = lse_max(m.wiretap_log2q, a);
                m.wiretap_w = softmax_weights(m.wiretap_log2q, a);
            }
            ev.value += term.weight * (m.legit_term - m.wiretap_term);
        }
        return ev;
    }

    double value(const CVector& f, double alpha) const { return evaluate(f, alpha).value; }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<MessageTerm> terms_;
};

namespace detail {

inline std::vector<double> resolve_weights(std::span<const double> weights, int k)
{
    if (weights.empty())
        return std::vector<double>(k, 1.0);
    if (static_cast<int>(weights.size()) != k)
        throw ConfigError("objective: need one weight per message");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw DomainError("objective: message weights must be positive");
    return {weights.begin(), weights.end()};
}

} // namespace detail

/// Non-colluding objective; `weights` (optional) multiplies each message term.
inline SmoothedObjective make_objective_nc(std::span<const CVector> channels, const LayerAssignment& layers,
                                           double noise_ratio, std::span<const double> weights = {})
{
    if (static_cast<int>(channels.size()) != layers.users())
        throw ConfigError("objective: channel count does not match layer assignment");
    const int k_total = layers.layers();
    const int n = channels.empty() ? 0 : static_cast<int>(channels[0].size());
    const auto w = detail::resolve_weights(weights, k_total);
    std::vector<MessageTerm> terms(k_total);
    for (int k = 0; k < k_total; ++k) {
        auto& t = terms[k];
        t.weight = w[k];
        for (int l = k; l < k_total; ++l)
            for (int u : layers.members(l))
                t.legit.push_back(build_ab(k, channels[u], n, k_total, noise_ratio));
        if (k > 0) {
            t.kind = WiretapKind::SmoothMax;
            for (int l = 0; l < k; ++l)
                for (int u : layers.members(l))
                    t.wiretap.push_back(build_ab(k, channels[u], n, k_total, noise_ratio));
        }
    }
    return {n, k_total, std::move(terms)};
}

inline SmoothedObjective make_objective_c(std::span<const CVector> channels, const LayerAssignment& layers,
                                          double noise_ratio, std::span<const double> weights = {})
{
    if (static_cast<int>(channels.size()) != layers.users())
        throw ConfigError("objective: channel count does not match layer assignment");
    const int k_total = layers.layers();
    const int n = channels.empty() ? 0 : static_cast<int>(channels[0].size());
    const auto w = detail::resolve_weights(weights, k_total);
    std::vector<MessageTerm> terms(k_total);
    for (int k = 0; k < k_total; ++k) {
        auto& t = terms[k];
        t.weight = w[k];
        for (int l = k; l < k_total; ++l)
            for (int u : layers.members(l))
                t.legit.push_back(build_ab(k, channels[u], n, k_total, noise_ratio));
        if (k > 0) {
            t.kind = WiretapKind::Colluding;
            const int gamma = layers.users_below(k);
            for (int l = 0; l < k; ++l)
                for (int u : layers.members(l))
                    t.wiretap.push_back(build_cd(k, channels[u], gamma, n, k_total, noise_ratio));
        }
    }
    return {n, k_total, std::move(terms)};
}

/// Security-free multicast sum-rate objective (wiretap terms stripped).
inline SmoothedObjective make_objective_sum_rate(std::span<const CVector> channels, const LayerAssignment& layers,
                                                 double noise_ratio)
{
    auto obj = make_objective_nc(channels, layers, noise_ratio);
    for (auto& t : obj.terms()) {
        t.wiretap.clear();
        t.kind = WiretapKind::None;
    }
    return obj;
}

/// Imperfect-CSIT NOMA objective; user k is the sole member of layer k.
inline SmoothedObjective make_objective_noma(std::span<const CVector> estimates, std::span<const CMatrix> error_covs,
                                             double noise_ratio)
{
    if (estimates.size() != error_covs.size())
        throw ConfigError("objective_noma: need one error covariance per user");
    const int k_total = static_cast<int>(estimates.size());
    const int n = k_total ? static_cast<int>(estimates[0].size()) : 0;
    std::vector<MessageTerm> terms(k_total);
    for (int k = 0; k < k_total; ++k)
        for (int i = k; i < k_total; ++i)
            terms[k].legit.push_back(build_ab_noma(k, estimates[i], error_covs[i], n, k_total, noise_ratio));
    return {n, k_total, std::move(terms)};
}

inline double objective_nc(const PrecoderStack& s, std::span<const CVector> channels, const LayerAssignment& layers,
                           double noise_ratio, double alpha)
{
    return make_objective_nc(channels, layers, noise_ratio).value(s.f, alpha);
}

inline double objective_c(const PrecoderStack& s, std::span<const CVector> channels, const LayerAssignment& layers,
                          double noise_ratio, double alpha)
{
    return make_objective_c(channels, layers, noise_ratio).value(s.f, alpha);
}

/// Weighted objective with weights 1/mu_k.
inline double objective_pf(const PrecoderStack& s, std::span<const CVector> channels, const LayerAssignment& layers,
                           double noise_ratio, double alpha, std::span<const double> mu, Collusion mode)
{
    std::vector<double> w(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
        if (!(mu[k] > 0.0))
            throw DomainError("objective_pf: mu must be positive");
        w[k] = 1.0 / mu[k];
    }
    const auto obj = mode == Collusion::Colluding ? make_objective_c(channels, layers, noise_ratio, w)
                                                  : make_objective_nc(channels, layers, noise_ratio, w);
    return obj.value(s.f, alpha);
}

inline double objective_noma(const PrecoderStack& s, std::span<const CVector> estimates,
                             std::span<const CMatrix> error_covs, double noise_ratio, double alpha)
{
    return make_objective_noma(estimates, error_covs, noise_ratio).value(s.f, alpha);
}

} // namespace hia
