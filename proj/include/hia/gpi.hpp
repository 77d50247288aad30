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

// Generalized power iteration on the eigenvector-dependent eigenproblem
//
//     B(f)^{-1} A(f) f = lambda(f) f,
//
// whose eigenvalue is the smoothed objective. A(f) and B(f) collect, per
// quadratic-form pair, the gradient weight times M / (f^H M f); their difference
// applied to f is the conjugate gradient of the objective.

#pragma once

#include "hia/block_diagonal.hpp"
#include "hia/secrecy.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

namespace hia {

struct GpiConfig {
    double alpha_init = 10.0;
    double alpha_decay = 0.9;
    double epsilon = 0.01;
    int max_inner_iters = 50;
    int max_alpha_restarts = 30;
    /// lambda_num = split_scale * lambda, lambda_den = split_scale. Any positive
    /// value yields the same normalized iterates.
    double split_scale = 1.0;
    bool record_trace = true;
    /// When positive, a run that reaches epsilon keeps iterating at the same
    /// alpha until the step drops below this value; if the step climbs back
    /// above epsilon or polish_max_iters runs out, alpha is decayed as usual.
    double polish_epsilon = 0.0;
    int polish_max_iters = 2000;

    void validate() const
    {
        if (!(alpha_init > 0.0) || !(alpha_decay > 0.0 && alpha_decay < 1.0) || !(epsilon > 0.0) ||
            max_inner_iters < 1 || max_alpha_restarts < 0 || !(split_scale > 0.0))
            throw ConfigError("GpiConfig: parameters out of range");
    }
};

enum class GpiStatus { Converged, IterationCap };

struct GpiRecord {
    int restart = 0;
    int iteration = 0;
    double alpha = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
};

struct GpiTrace {
    std::vector<GpiRecord> records;
    GpiStatus status = GpiStatus::IterationCap;
    int restarts = 0;
    int total_iterations = 0;
    int final_iterations = 0;   // iterations in the run that produced the output
    double final_alpha = 0.0;
    double final_residual = std::numeric_limits<double>::quiet_NaN();
};

inline std::ostream& operator<<(std::ostream& os, GpiStatus s)
{
    return os << (s == GpiStatus::Converged ? "converged" : "iteration-cap");
}

/// A(f), B(f) and the eigenvalue split. `a` and `b` hold the unscaled
/// gradient-weight sums; the operators of the eigenproblem are
/// lambda_num * a and lambda_den * b.
struct IterationMatrices {
    BlockDiagonal a;
    BlockDiagonal b;
    double lambda = 0.0;
    double lambda_num = 0.0;
    double lambda_den = 1.0;

    CVector apply_a(const CVector& f) const { return lambda_num * a.apply(f); }
    CVector solve_b(const CVector& x) const { return b.solve(x) / lambda_den; }

    /// B^{-1} A f.
    CVector apply(const CVector& f) const { return solve_b(apply_a(f)); }

    CMatrix dense_a() const { return lambda_num * a.dense(); }
    CMatrix dense_b() const { return lambda_den * b.dense(); }
};

/// Builds the unscaled operators. The optional mutation flips the sign of the
/// denominator-side sum; it exists only so validation can demonstrate that the
/// gradient check catches a broken builder.
inline IterationMatrices build_iteration_matrices(const SmoothedObjective& obj, const CVector& f, double alpha,
                                                  double split_scale = 1.0, bool flip_b_sign = false)
{
    const ObjectiveEval ev = obj.evaluate(f, alpha);
    const int n = obj.n_antennas();
    const int k = obj.n_messages();
    IterationMatrices m{BlockDiagonal(n, k), BlockDiagonal(n, k)};
    for (std::size_t t = 0; t < obj.terms().size(); ++t) {
        const auto& term = obj.terms()[t];
        const auto& e = ev.messages[t];
        for (std::size_t i = 0; i < term.legit.size(); ++i) {
            const double c = term.weight * e.legit_w[i] / kLn2;
            if (c == 0.0)
                continue;
            const auto& p = term.legit[i];
            p.num.accumulate_into(m.a, c / p.num.value(f));
            p.den.accumulate_into(m.b, c / p.den.value(f));
        }
        for (std::size_t i = 0; i < e.wiretap_w.size(); ++i) {
            const double c = term.weight * e.wiretap_w[i] / kLn2;
            if (c == 0.0)
                continue;
            const auto& p = term.wiretap[i];
            p.den.accumulate_into(m.a, c / p.den.value(f));
            p.num.accumulate_into(m.b, c / p.num.value(f));
        }
    }
    if (flip_b_sign)
        m.b.scale(-1.0);
    m.lambda = ev.value;
    m.lambda_num = split_scale * ev.value;
    m.lambda_den = split_scale;
    return m;
}

/// Conjugate gradient d lambda / d f^H = (A(f) - B(f)) f.
inline CVector objective_gradient(const SmoothedObjective& obj, const CVector& f, double alpha,
                                  bool flip_b_sign = false)
{
    const auto m = build_iteration_matrices(obj, f, alpha, 1.0, flip_b_sign);
    return m.a.apply(f) - m.b.apply(f);
}

/// ||B^{-1} A f - lambda f|| / ||f||.
inline double nepv_residual(const IterationMatrices& m, const CVector& f)
{
    return (m.apply(f) - m.lambda * f).norm() / f.norm();
}

/// One normalized power step. The sign of lambda_num / lambda_den is divided
/// out so a negative eigenvalue does not flip the iterate; a zero eigenvalue
/// falls back to the unscaled operators.
inline CVector gpi_step(const IterationMatrices& m, const CVector& f)
{
    const double ratio = m.lambda_num / m.lambda_den;
    CVector y = ratio != 0.0 && std::isfinite(ratio) ? m.apply(f) : m.b.solve(m.a.apply(f));
    if (ratio < 0.0)
        y = -y;
    const double nrm = y.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        return CVector::Constant(f.size(), cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
    return y / nrm;
}

/// Objective plus the exact metric used to rank iterates when the restart
/// budget runs out.
struct GpiProblem {
    SmoothedObjective objective;
    std::function<double(const PrecoderStack&)> score;
};

struct GpiResult {
    PrecoderStack stack;
    GpiTrace trace;
};

namespace detail {

/// Continues at fixed alpha until the step drops below polish_epsilon.
/// Returns false when the run stalls (typically a two-cycle).
inline bool polish(const SmoothedObjective& obj, CVector& f, double alpha, const GpiConfig& cfg, int restart,
                   int t0, GpiTrace& trace)
{
    double residual = trace.final_residual;
    for (int t = 1; t <= cfg.polish_max_iters && residual >= cfg.polish_epsilon; ++t) {
        const auto m = build_iteration_matrices(obj, f, alpha, cfg.split_scale);
        CVector next = gpi_step(m, f);
        ++trace.total_iterations;
        if (!next.allFinite())
            return false;
        residual = (next - f).norm();
        f = std::move(next);
        if (cfg.record_trace)
            trace.records.push_back({restart, t0 + t, alpha, obj.value(f, alpha), residual});
        if (residual >= cfg.epsilon)
            break;
    }
    trace.final_residual = residual;
    return residual < cfg.polish_epsilon;
}

} // namespace detail

/// Power iteration with alpha decay: on failing to reach epsilon within
/// max_inner_iters, alpha <- alpha_decay * alpha and restart from `initial`.
inline GpiResult gpi_solve(const GpiProblem& problem, const PrecoderStack& initial, const GpiConfig& cfg = {})
{
    cfg.validate();
    const int n = problem.objective.n_antennas();
    const int k = problem.objective.n_messages();
    if (initial.n_antennas != n || initial.n_messages != k)
        throw ContractViolation("gpi_solve: initial stack dimension mismatch");
    const PrecoderStack start = initial.normalized();

    GpiResult out;
    auto& trace = out.trace;
    double best_score = -std::numeric_limits<double>::infinity();
    PrecoderStack best = start;
    auto consider = [&](const CVector& f) {
        if (!problem.score)
            return;
        const PrecoderStack s(n, k, f);
        const double v = problem.score(s);
        if (v > best_score) {
            best_score = v;
            best = s;
        }
    };
    consider(start.f);

    double alpha = cfg.alpha_init;
    for (int restart = 0; restart <= cfg.max_alpha_restarts; ++restart) {
        CVector f = start.f;
        for (int t = 1; t <= cfg.max_inner_iters; ++t) {
            const auto m = build_iteration_matrices(problem.objective, f, alpha, cfg.split_scale);
            CVector next = gpi_step(m, f);
            ++trace.total_iterations;
            if (!next.allFinite())
                break;
            const double residual = (next - f).norm();
            f = std::move(next);
            consider(f);
            if (cfg.record_trace)
                trace.records.push_back({restart, t, alpha, problem.objective.value(f, alpha), residual});
            if (residual < cfg.epsilon) {
                trace.status = GpiStatus::Converged;
                trace.restarts = restart;
                trace.final_iterations = t;
                trace.final_alpha = alpha;
                trace.final_residual = residual;
                if (cfg.polish_epsilon > 0.0 && !detail::polish(problem.objective, f, alpha, cfg, restart, t, trace)) {
                    consider(f);
                    trace.status = GpiStatus::IterationCap;
                    break;
                }
                out.stack = PrecoderStack(n, k, f);
                return out;
            }
        }
        if (restart < cfg.max_alpha_restarts)
            alpha *= cfg.alpha_decay;
    }
    trace.status = GpiStatus::IterationCap;
    trace.restarts = cfg.max_alpha_restarts;
    trace.final_alpha = alpha;
    trace.final_iterations = 0;
    out.stack = best;
    return out;
}

// ---------------------------------------------------------------------------
// Proportional fairness
// ---------------------------------------------------------------------------

struct PfState {
    std::vector<double> mu;
    double delta = 0.2;
    double mu_floor = 1e-3;

    static PfState uniform(int k, double delta, double mu0 = 1.0) { return {std::vector<double>(k, mu0), delta}; }

    std::vector<double> weights() const
    {
        std::vector<double> w(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (!(mu[i] > 0.0))
                throw DomainError("PfState: mu must be positive");
            w[i] = 1.0 / mu[i];
        }
        return w;
    }
};

/// mu <- (1 - delta) mu + delta R, floored at mu_floor.
inline PfState pf_update(const PfState& state, std::span<const double> rates)
{
    if (rates.size() != state.mu.size())
        throw ConfigError("pf_update: need one rate per message");
    PfState next = state;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (rates[i] < 0.0)
            throw DomainError("pf_update: rates must be nonnegative");
        next.mu[i] = std::max(state.mu_floor, (1.0 - state.delta) * state.mu[i] + state.delta * rates[i]);
    }
    return next;
}

// ---------------------------------------------------------------------------
// Variant builders
// ---------------------------------------------------------------------------

inline IterationMatrices iter_matrices_nc(const PrecoderStack& s, std::span<const CVector> channels,
                                          const LayerAssignment& layers, double noise_ratio, double alpha)
{
    return build_iteration_matrices(make_objective_nc(channels, layers, noise_ratio), s.f, alpha);
}

inline IterationMatrices iter_matrices_c(const PrecoderStack& s, std::span<const CVector> channels,
                                         const LayerAssignment& layers, double noise_ratio, double alpha)
{
    return build_iteration_matrices(make_objective_c(channels, layers, noise_ratio), s.f, alpha);
}

inline IterationMatrices iter_matrices_pf(const PrecoderStack& s, std::span<const CVector> channels,
                                          const LayerAssignment& layers, double noise_ratio, double alpha,
                                          const PfState& pf, Collusion mode = Collusion::NonColluding)
{
    const auto w = pf.weights();
    const auto obj = mode == Collusion::Colluding ? make_objective_c(channels, layers, noise_ratio, w)
                                                  : make_objective_nc(channels, layers, noise_ratio, w);
    return build_iteration_matrices(obj, s.f, alpha);
}

inline IterationMatrices iter_matrices_noma(const PrecoderStack& s, std::span<const CVector> estimates,
                                            std::span<const CMatrix> error_covs, double noise_ratio, double alpha)
{
    return build_iteration_matrices(make_objective_noma(estimates, error_covs, noise_ratio), s.f, alpha);
}

inline IterationMatrices iter_matrices_noma(const PrecoderStack& s, std::span<const CVector> estimates,
                                            std::span<const CMatrix> error_covs, const LayerAssignment& layers,
                                            double noise_ratio, double alpha)
{
    if (!layers.all_singleton())
        throw ConfigError("iter_matrices_noma: NOMA requires exactly one user per layer");
    return iter_matrices_noma(s, estimates, error_covs, noise_ratio, alpha);
}

// GpiProblem factories pairing each smoothed objective with its exact metric.

inline GpiProblem problem_secrecy(Collusion mode, std::span<const CVector> channels, const LayerAssignment& layers,
                                  double noise_ratio, std::span<const double> weights = {})
{
    GpiProblem p;
    p.objective = mode == Collusion::Colluding ? make_objective_c(channels, layers, noise_ratio, weights)
                                               : make_objective_nc(channels, layers, noise_ratio, weights);
    std::vector<CVector> ch(channels.begin(), channels.end());
    std::vector<double> w(weights.begin(), weights.end());
    p.score = [mode, ch = std::move(ch), layers, noise_ratio, w = std::move(w)](const PrecoderStack& s) {
        const auto r = secrecy_rates(mode, ch, layers, s, noise_ratio);
        double acc = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k)
            acc += (w.empty() ? 1.0 : w[k]) * r[k];
        return acc;
    };
    return p;
}

inline GpiProblem problem_sum_rate(std::span<const CVector> channels, const LayerAssignment& layers,
                                   double noise_ratio)
{
    GpiProblem p;
    p.objective = make_objective_sum_rate(channels, layers, noise_ratio);
    std::vector<CVector> ch(channels.begin(), channels.end());
    p.score = [ch = std::move(ch), layers, noise_ratio](const PrecoderStack& s) {
        const auto r = multicast_rates(ch, layers, s, noise_ratio);
        return std::accumulate(r.begin(), r.end(), 0.0);
    };
    return p;
}

/// NOMA under imperfect CSIT; the fallback ranks by the lower-bound sum rate.
inline GpiProblem problem_noma(std::span<const CVector> estimates, std::span<const CMatrix> error_covs,
                               double noise_ratio)
{
    GpiProblem p;
    p.objective = make_objective_noma(estimates, error_covs, noise_ratio);
    std::vector<CVector> est(estimates.begin(), estimates.end());
    std::vector<CMatrix> cov(error_covs.begin(), error_covs.end());
    p.score = [est = std::move(est), cov = std::move(cov), noise_ratio](const PrecoderStack& s) {
        double acc = 0.0;
        const int k_total = static_cast<int>(est.size());
        for (int k = 0; k < k_total; ++k) {
            double lo = std::numeric_limits<double>::infinity();
            for (int i = k; i < k_total; ++i)
                lo = std::min(lo, lower_bound_rate(k, est[i], cov[i], s, noise_ratio));
            acc += lo;
        }
        return acc;
    };
    return p;
}

} // namespace hia
