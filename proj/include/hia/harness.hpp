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

// Monte Carlo engine: channel draws, solver/baseline runs, exact-rate
// bookkeeping and CSV output. Every random stream is derived from
// (scenario seed, draw, user[, slot]) so results do not depend on the
// number of worker threads or the order in which trials finish.

#pragma once

#include "hia/baselines.hpp"
#include "hia/channel.hpp"
#include "hia/gpi.hpp"
#include "hia/scenario.hpp"
#include "hia/secrecy.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

namespace hia {

/// A reported rate came out non-finite.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Channel draws
// ---------------------------------------------------------------------------

struct UserDraw {
    UserGeometry geom;
    double distance_m = 0.0;
    CovarianceFactors cov;
};

struct UserChannel {
    CVector h;       // true channel
    CVector h_hat;   // estimate (equals h when kappa = 0)
    CMatrix phi;     // estimation error covariance
};

inline double noise_ratio_for(double snr_db) { return db_to_linear(-snr_db); }

/// Geometry and covariance of M users for one draw.
inline std::vector<UserDraw> draw_users(const Scenario& sc, int m, int draw)
{
    const auto array = AntennaArray::uniform_circular(sc.n_antennas);
    const CovarianceOptions opts{sc.quad_points};
    const double ref_gain = sc.gain == GainPolicy::Pathloss ? pathloss_gain(sc.distance_min_m, sc.pathloss) : 1.0;
    std::vector<UserDraw> out(m);
    for (int u = 0; u < m; ++u) {
        std::mt19937_64 eng(derive_seed(sc.seed, static_cast<std::uint64_t>(draw), 2 * static_cast<std::uint64_t>(u)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto& d = out[u];
        d.geom.spread = sc.spread_deg * kPi / 180.0;
        d.geom.aoa = sc.aoa == AoaPolicy::Uniform ? 2.0 * kPi * unit(eng) : sc.aoa_deg * kPi / 180.0;
        if (sc.gain == GainPolicy::Pathloss) {
            d.distance_m = sc.distance_min_m + (sc.distance_max_m - sc.distance_min_m) * unit(eng);
            d.geom.gain = pathloss_gain(d.distance_m, sc.pathloss) / ref_gain;
        }
        d.cov = build_covariance(array, d.geom, opts);
    }
    return out;
}

/// Small-scale fading (and CSIT) for one draw; `slot` separates PF time steps.
inline std::vector<UserChannel> sample_channels(const Scenario& sc, const std::vector<UserDraw>& users, int draw,
                                                int slot = 0)
{
    const auto base = derive_seed(sc.seed, static_cast<std::uint64_t>(draw), 0x51075ULL + static_cast<std::uint64_t>(slot));
    std::vector<UserChannel> out(users.size());
    for (std::size_t u = 0; u < users.size(); ++u) {
        const auto real = sample_channel(users[u].cov, derive_seed(base, u, 1));
        out[u].h = real.h;
        if (sc.kappa > 0.0) {
            auto est = sample_csit(users[u].cov, real.g, sc.kappa, derive_seed(base, u, 2));
            out[u].h_hat = std::move(est.h_hat);
            out[u].phi = std::move(est.error_cov);
        } else {
            out[u].h_hat = real.h;
            out[u].phi = CMatrix::Zero(sc.n_antennas, sc.n_antennas);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

struct TrialPoint {
    double snr_db = 0.0;
    int users = 0;
};

struct MethodResult {
    std::string method;
    std::vector<double> rates;      // reported metric, per message
    std::vector<double> rates_nc;   // secrecy scenarios: both metrics for the same precoder
    std::vector<double> rates_c;
    std::vector<double> bound;      // NOMA: lower-bound objective per message
    double sum = 0.0;
    int iterations = 0;             // iterations of the converging alpha run
    int total_iterations = 0;
    bool converged = true;
    double wall_seconds = 0.0;
};

struct TrialResult {
    TrialPoint point;
    int draw = 0;
    std::vector<MethodResult> methods;

    const MethodResult* find(std::string_view name) const
    {
        for (const auto& m : methods)
            if (m.method == name)
                return &m;
        return nullptr;
    }
};

inline GpiConfig gpi_config(const Scenario& sc)
{
    GpiConfig cfg;
    cfg.alpha_init = sc.alpha_init;
    cfg.alpha_decay = sc.alpha_decay;
    cfg.epsilon = sc.epsilon;
    cfg.max_inner_iters = sc.max_inner_iters;
    cfg.max_alpha_restarts = sc.max_alpha_restarts;
    cfg.record_trace = false;
    return cfg;
}

namespace detail {

inline double finite_sum(const std::vector<double>& r, const std::string& method)
{
    double s = 0.0;
    for (double x : r) {
        if (!std::isfinite(x))
            throw NumericalFailure("non-finite rate reported by " + method);
        s += x;
    }
    return s;
}

inline MethodResult secrecy_result(std::string name, Variant v, std::span<const CVector> h, const LayerAssignment& layers,
                                   const PrecoderStack& s, double noise)
{
    MethodResult r;
    r.method = std::move(name);
    r.rates_nc = secrecy_rates(Collusion::NonColluding, h, layers, s, noise);
    r.rates_c = secrecy_rates(Collusion::Colluding, h, layers, s, noise);
    r.rates = is_colluding(v) ? r.rates_c : r.rates_nc;
    r.sum = finite_sum(r.rates, r.method);
    finite_sum(is_colluding(v) ? r.rates_nc : r.rates_c, r.method);
    return r;
}

inline PrecoderStack baseline_stack(const std::string& b, std::span<const CVector> h, const LayerAssignment& layers)
{
    return b == "zf" ? zf(h, layers).stack : mrt(h, layers);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline Collusion collusion_of(Variant v) { return is_colluding(v) ? Collusion::Colluding : Collusion::NonColluding; }

} // namespace detail

/// Secrecy trial: one GPI run per variant plus each baseline under each
/// variant's metric, all on the same channel draw.
inline TrialResult run_secrecy_trial(const Scenario& sc, const TrialPoint& pt, int draw)
{
    const auto users = draw_users(sc, pt.users, draw);
    const auto ch = sample_channels(sc, users, draw);
    std::vector<CVector> h;
    for (const auto& c : ch)
        h.push_back(c.h);
    const auto sizes = sc.layers_for(pt.users);
    const auto layers = LayerAssignment::from_sizes(sizes);
    const double noise = noise_ratio_for(pt.snr_db);
    const auto cfg = gpi_config(sc);

    TrialResult out{pt, draw, {}};
    const auto init = mrt(h, layers);
    for (Variant v : sc.variants) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = gpi_solve(problem_secrecy(detail::collusion_of(v), h, layers, noise), init, cfg);
        auto r = detail::secrecy_result(std::string("gpi-hia-") + to_string(v), v, h, layers, res.stack, noise);
        r.iterations = res.trace.final_iterations;
        r.total_iterations = res.trace.total_iterations;
        r.converged = res.trace.status == GpiStatus::Converged;
        r.wall_seconds = detail::seconds_since(t0);
        out.methods.push_back(std::move(r));
    }
    for (const auto& b : sc.baselines) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = detail::baseline_stack(b, h, layers);
        const double dt = detail::seconds_since(t0);
        for (Variant v : sc.variants) {
            auto r = detail::secrecy_result(b + "-" + to_string(v), v, h, layers, s, noise);
            r.wall_seconds = dt;
            out.methods.push_back(std::move(r));
        }
    }
    return out;
}

/// Users in SIC order: ascending estimated channel norm.
inline std::vector<int> noma_order(const std::vector<UserChannel>& ch)
{
    std::vector<int> idx(ch.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return ch[a].h_hat.squaredNorm() < ch[b].h_hat.squaredNorm(); });
    return idx;
}

/// NOMA trial: precoders from estimates, rates on the true channels.
inline TrialResult run_noma_trial(const Scenario& sc, const TrialPoint& pt, int draw)
{
    const auto users = draw_users(sc, pt.users, draw);
    const auto ch = sample_channels(sc, users, draw);
    const auto order = noma_order(ch);
    std::vector<CVector> h, h_hat;
    std::vector<CMatrix> phi;
    for (int u : order) {
        h.push_back(ch[u].h);
        h_hat.push_back(ch[u].h_hat);
        phi.push_back(ch[u].phi);
    }
    const int k = pt.users;
    const auto layers = LayerAssignment::singletons(k);
    const double noise = noise_ratio_for(pt.snr_db);

    auto evaluate = [&](std::string name, const PrecoderStack& s) {
        MethodResult r;
        r.method = std::move(name);
        r.rates = multicast_rates(h, layers, s, noise);
        r.sum = detail::finite_sum(r.rates, r.method);
        r.bound.resize(k);
        for (int m = 0; m < k; ++m) {
            double lo = std::numeric_limits<double>::infinity();
            for (int i = m; i < k; ++i)
                lo = std::min(lo, lower_bound_rate(m, h_hat[i], phi[i], s, noise));
            r.bound[m] = lo;
        }
        return r;
    };

    TrialResult out{pt, draw, {}};
    const auto init = mrt(h_hat, layers);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = gpi_solve(problem_noma(h_hat, phi, noise), init, gpi_config(sc));
    auto r = evaluate("gpi-noma", res.stack);
    r.iterations = res.trace.final_iterations;
    r.total_iterations = res.trace.total_iterations;
    r.converged = res.trace.status == GpiStatus::Converged;
    r.wall_seconds = detail::seconds_since(t0);
    out.methods.push_back(std::move(r));
    for (const auto& b : sc.baselines)
        out.methods.push_back(evaluate(b, detail::baseline_stack(b, h_hat, layers)));
    return out;
}

inline TrialResult run_trial(const Scenario& sc, const TrialPoint& pt, int draw)
{
    if (sc.variants.front() == Variant::Noma)
        return run_noma_trial(sc, pt, draw);
    if (is_pf(sc.variants.front()))
        throw ConfigError("run_trial: pf scenarios run through pf_loop");
    return run_secrecy_trial(sc, pt, draw);
}

// ---------------------------------------------------------------------------
// Parallel driver
// ---------------------------------------------------------------------------

/// Worker count: explicit value, else HIA_PRECODE_JOBS, else 1.
inline int resolve_jobs(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("HIA_PRECODE_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    return 1;
}

/// Runs fn(i) for i in [0, n) on `jobs` threads; rethrows the failure with the
/// smallest index.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn)
{
    jobs = std::max(1, std::min(jobs, n));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

/// One CSV row. `message` is the 1-based message index, "sum", or for PF
/// runs "jain" / "min".
struct SummaryRow {
    std::string scenario;
    std::string method;
    double snr_db = 0.0;
    int users = 0;
    std::string message;
    double mean = 0.0;
    double stderr_ = 0.0;
    int draws = 0;
    std::uint64_t seed = 0;
};

inline std::pair<double, double> mean_stderr(const std::vector<double>& x)
{
    const double n = static_cast<double>(x.size());
    if (x.empty())
        return {0.0, 0.0};
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= n;
    if (x.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

inline std::vector<TrialPoint> sweep_points(const Scenario& sc)
{
    std::vector<TrialPoint> pts;
    for (int m : sc.user_grid)
        for (double s : sc.snr_db)
            pts.push_back({s, m});
    return pts;
}

struct MonteCarloResult {
    std::vector<TrialResult> trials;   // point-major, draw-minor
    std::vector<SummaryRow> rows;
};

inline std::vector<SummaryRow> summarize(const Scenario& sc, const std::vector<TrialResult>& trials)
{
    std::vector<SummaryRow> rows;
    std::size_t i = 0;
    while (i < trials.size()) {
        std::size_t j = i;
        while (j < trials.size() && trials[j].point.snr_db == trials[i].point.snr_db &&
               trials[j].point.users == trials[i].point.users)
            ++j;
        const auto& first = trials[i];
        const int n = static_cast<int>(j - i);
        for (std::size_t mi = 0; mi < first.methods.size(); ++mi) {
            const auto& name = first.methods[mi].method;
            const int k = static_cast<int>(first.methods[mi].rates.size());
            auto emit = [&](std::string label, auto pick) {
                std::vector<double> xs;
                for (std::size_t t = i; t < j; ++t)
                    xs.push_back(pick(trials[t].methods[mi]));
                const auto [mu, se] = mean_stderr(xs);
                rows.push_back({sc.id, name, first.point.snr_db, first.point.users, std::move(label), mu, se, n, sc.seed});
            };
            for (int m = 0; m < k; ++m)
                emit(std::to_string(m + 1), [m](const MethodResult& r) { return r.rates[m]; });
            emit("sum", [](const MethodResult& r) { return r.sum; });
        }
        i = j;
    }
    return rows;
}

inline MonteCarloResult monte_carlo(const Scenario& sc, int jobs = 0)
{
    sc.validate();
    const auto pts = sweep_points(sc);
    const int total = static_cast<int>(pts.size()) * sc.draws;
    MonteCarloResult out;
    out.trials.resize(total);
    parallel_for(total, resolve_jobs(jobs), [&](int i) {
        out.trials[i] = run_trial(sc, pts[i / sc.draws], i % sc.draws);
    });
    out.rows = summarize(sc, out.trials);
    return out;
}

inline MonteCarloResult noma_experiment(const Scenario& sc, int jobs = 0)
{
    if (sc.variants.front() != Variant::Noma)
        throw ConfigError("noma_experiment: scenario variant must be noma");
    return monte_carlo(sc, jobs);
}

// ---------------------------------------------------------------------------
// Convergence traces
// ---------------------------------------------------------------------------

struct TraceRun {
    std::string method;
    int draw = 0;
    GpiTrace trace;
};

struct TraceResult {
    std::vector<TraceRun> runs;   // draw-major, variant-minor
};

/// Records every GPI iteration at the first grid point for each draw.
inline TraceResult trace_experiment(const Scenario& sc, int jobs = 0)
{
    sc.validate();
    for (Variant v : sc.variants)
        if (v != Variant::Nc && v != Variant::C)
            throw ConfigError("trace: only nc and c variants can be traced");
    const TrialPoint pt{sc.snr_db.front(), sc.user_grid.front()};
    const int nv = static_cast<int>(sc.variants.size());
    TraceResult out;
    out.runs.resize(static_cast<std::size_t>(sc.draws) * nv);
    auto cfg = gpi_config(sc);
    cfg.record_trace = true;
    parallel_for(sc.draws, resolve_jobs(jobs), [&](int draw) {
        const auto users = draw_users(sc, pt.users, draw);
        const auto ch = sample_channels(sc, users, draw);
        std::vector<CVector> h;
        for (const auto& c : ch)
            h.push_back(c.h);
        const auto layers = LayerAssignment::from_sizes(sc.layers_for(pt.users));
        const double noise = noise_ratio_for(pt.snr_db);
        const auto init = mrt(h, layers);
        for (int vi = 0; vi < nv; ++vi) {
            const Variant v = sc.variants[vi];
            auto res = gpi_solve(problem_secrecy(detail::collusion_of(v), h, layers, noise), init, cfg);
            out.runs[static_cast<std::size_t>(draw) * nv + vi] =
                TraceRun{std::string("gpi-hia-") + to_string(v), draw, std::move(res.trace)};
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Proportional-fair time loop
// ---------------------------------------------------------------------------

struct PfMethodHistory {
    std::string method;
    // rates[draw][slot][message], exact and clamped
    std::vector<std::vector<std::vector<double>>> rates;
    std::vector<std::vector<double>> final_mu;   // per draw; empty for the unweighted run
};

struct PfResult {
    PfMethodHistory pf;
    PfMethodHistory plain;
    std::vector<SummaryRow> rows;

    /// Per-message averages over all draws and slots.
    static std::vector<double> message_means(const PfMethodHistory& h)
    {
        std::vector<double> acc;
        double n = 0.0;
        for (const auto& draw : h.rates)
            for (const auto& slot : draw) {
                acc.resize(slot.size(), 0.0);
                for (std::size_t k = 0; k < slot.size(); ++k)
                    acc[k] += slot[k];
                n += 1.0;
            }
        for (double& a : acc)
            a /= n;
        return acc;
    }
};

/// Jain's index (sum x)^2 / (K sum x^2); 1 for an all-zero vector.
inline double jain_index(std::span<const double> x)
{
    double s = 0.0, s2 = 0.0;
    for (double v : x) {
        s += v;
        s2 += v * v;
    }
    if (!(s2 > 0.0))
        return 1.0;
    return s * s / (static_cast<double>(x.size()) * s2);
}

/// Time loop: every slot draws fresh fading on fixed geometry, solves the PF
/// weighted problem and the unweighted problem on the same channels, and
/// updates the PF averages from the PF run's exact rates.
inline PfResult pf_loop(const Scenario& sc, int jobs = 0)
{
    sc.validate();
    const Variant v = sc.variants.front();
    if (!is_pf(v))
        throw ConfigError("pf_loop: scenario variant must be pf-nc or pf-c");
    const Collusion mode = v == Variant::PfC ? Collusion::Colluding : Collusion::NonColluding;
    const Variant plain_v = v == Variant::PfC ? Variant::C : Variant::Nc;
    const TrialPoint pt{sc.snr_db.front(), sc.user_grid.front()};
    const auto layers = LayerAssignment::from_sizes(sc.layers_for(pt.users));
    const int k = layers.layers();
    const double noise = noise_ratio_for(pt.snr_db);
    const auto cfg = gpi_config(sc);

    PfResult out;
    out.pf.method = std::string("gpi-hia-") + to_string(v);
    out.plain.method = std::string("gpi-hia-") + to_string(plain_v);
    out.pf.rates.resize(sc.draws);
    out.plain.rates.resize(sc.draws);
    out.pf.final_mu.resize(sc.draws);

    parallel_for(sc.draws, resolve_jobs(jobs), [&](int draw) {
        const auto users = draw_users(sc, pt.users, draw);
        PfState state = PfState::uniform(k, sc.pf_delta, sc.pf_mu0);
        for (int slot = 0; slot < sc.slots; ++slot) {
            const auto ch = sample_channels(sc, users, draw, slot);
            std::vector<CVector> h;
            for (const auto& c : ch)
                h.push_back(c.h);
            const auto init = mrt(h, layers);
            const auto w = state.weights();
            const auto weighted = gpi_solve(problem_secrecy(mode, h, layers, noise, w), init, cfg);
            const auto plain = gpi_solve(problem_secrecy(mode, h, layers, noise), init, cfg);
            auto r_pf = secrecy_rates(mode, h, layers, weighted.stack, noise);
            auto r_plain = secrecy_rates(mode, h, layers, plain.stack, noise);
            detail::finite_sum(r_pf, out.pf.method);
            detail::finite_sum(r_plain, out.plain.method);
            state = pf_update(state, r_pf);
            out.pf.rates[draw].push_back(std::move(r_pf));
            out.plain.rates[draw].push_back(std::move(r_plain));
        }
        out.pf.final_mu[draw] = state.mu;
    });

    for (const auto* hist : {&out.pf, &out.plain}) {
        // Per-draw long-run averages give the standard errors.
        std::vector<std::vector<double>> per_draw(k);
        std::vector<double> per_draw_sum;
        for (const auto& draw : hist->rates) {
            std::vector<double> avg(k, 0.0);
            for (const auto& slot : draw)
                for (int m = 0; m < k; ++m)
                    avg[m] += slot[m] / static_cast<double>(draw.size());
            double s = 0.0;
            for (int m = 0; m < k; ++m) {
                per_draw[m].push_back(avg[m]);
                s += avg[m];
            }
            per_draw_sum.push_back(s);
        }
        auto row = [&](std::string label, double mean, double se) {
            out.rows.push_back({sc.id, hist->method, pt.snr_db, pt.users, std::move(label), mean, se, sc.draws, sc.seed});
        };
        for (int m = 0; m < k; ++m) {
            const auto [mu, se] = mean_stderr(per_draw[m]);
            row(std::to_string(m + 1), mu, se);
        }
        const auto [mu, se] = mean_stderr(per_draw_sum);
        row("sum", mu, se);
        const auto means = PfResult::message_means(*hist);
        row("jain", jain_index(means), 0.0);
        row("min", *std::min_element(means.begin(), means.end()), 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

inline constexpr const char* kSummaryHeader = "scenario,method,snr_db,users,message,mean_rate_bits,stderr,draws,seed";
inline constexpr const char* kTraceHeader = "scenario,method,draw,restart,iteration,alpha,lambda,residual";
inline constexpr const char* kCdfHeader = "scenario,method,rate_bits,cdf";

inline std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    os << kSummaryHeader << '\n';
    for (const auto& r : rows)
        os << r.scenario << ',' << r.method << ',' << format_number(r.snr_db) << ',' << r.users << ',' << r.message << ','
           << format_number(r.mean) << ',' << format_number(r.stderr_) << ',' << r.draws << ',' << r.seed << '\n';
}

inline void write_trace_csv(std::ostream& os, const std::string& scenario, const TraceResult& tr)
{
    os << kTraceHeader << '\n';
    for (const auto& run : tr.runs)
        for (const auto& rec : run.trace.records)
            os << scenario << ',' << run.method << ',' << run.draw << ',' << rec.restart << ',' << rec.iteration << ','
               << format_number(rec.alpha) << ',' << format_number(rec.lambda) << ',' << format_number(rec.residual)
               << '\n';
}

/// Empirical CDF of per-slot per-message secrecy rates for both PF runs.
inline void write_cdf_csv(std::ostream& os, const std::string& scenario, const PfResult& pf)
{
    os << kCdfHeader << '\n';
    for (const auto* hist : {&pf.pf, &pf.plain}) {
        std::vector<double> xs;
        for (const auto& draw : hist->rates)
            for (const auto& slot : draw)
                xs.insert(xs.end(), slot.begin(), slot.end());
        std::sort(xs.begin(), xs.end());
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (i + 1 == xs.size() || xs[i + 1] != xs[i])
                os << scenario << ',' << hist->method << ',' << format_number(xs[i]) << ','
                   << format_number(static_cast<double>(i + 1) / n) << '\n';
    }
}

/// Output schema text for the CLI `schema` subcommand.
inline const char* output_schema()
{
    return R"(summary csv (run: monte carlo, noma and pf scenarios)
  scenario,method,snr_db,users,message,mean_rate_bits,stderr,draws,seed
  method          gpi-hia-<variant> | mrt-<variant> | zf-<variant> | gpi-noma | mrt | zf
  users           total user count M
  message         1-based message index, sum, or (pf runs) jain / min
  mean_rate_bits  mean exact rate in bits/s/Hz (jain: fairness index)
  stderr          standard error over draws (0 for jain and min)
trace csv (run on a trace scenario, or the trace subcommand)
  scenario,method,draw,restart,iteration,alpha,lambda,residual
cdf csv (pf scenarios, written next to the summary as <out>.cdf.csv)
  scenario,method,rate_bits,cdf
)";
}

} // namespace hia
