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

// Small-scale self checks run by `hia_precode validate`. Each check reports
// the worst measured error against a fixed tolerance.

#pragma once

#include "hia/baselines.hpp"
#include "hia/channel.hpp"
#include "hia/gpi.hpp"
#include "hia/secrecy.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace hia {

struct CheckResult {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidateOptions {
    std::string only;                 // suite name filter; empty runs all
    bool inject_b_sign_flip = false;  // mutation canary for the gradient suite
    std::uint64_t seed = 2024;
};

inline const std::vector<std::string>& validate_suites()
{
    static const std::vector<std::string> s = {"lse", "quadform", "gradient", "fixed-point", "split", "baseline", "channel"};
    return s;
}

namespace vdetail {

struct Instance {
    int n = 0;
    LayerAssignment layers;
    std::vector<CVector> h;
    double noise = 0.0;
};

inline Instance random_instance(std::mt19937_64& eng, int n, std::vector<int> sizes, double snr_db)
{
    Instance in;
    in.n = n;
    in.layers = LayerAssignment::from_sizes(sizes);
    for (int u = 0; u < in.layers.users(); ++u)
        in.h.push_back(complex_normal(n, eng));
    in.noise = db_to_linear(-snr_db);
    return in;
}

inline CVector random_stack(std::mt19937_64& eng, int dim)
{
    CVector f = complex_normal(dim, eng);
    return f / f.norm();
}

/// Central differences of a real function of a complex vector, returned as the
/// conjugate gradient (d/dRe + j d/dIm) / 2.
template <class Fn>
CVector fd_gradient(const Fn& fn, const CVector& f, double step)
{
    CVector g(f.size());
    for (int i = 0; i < f.size(); ++i) {
        CVector p = f, m = f;
        p(i) += step;
        m(i) -= step;
        const double dre = (fn(p) - fn(m)) / (2.0 * step);
        p = f;
        m = f;
        p(i) += cplx(0.0, step);
        m(i) -= cplx(0.0, step);
        const double dim = (fn(p) - fn(m)) / (2.0 * step);
        g(i) = cplx(dre, dim) / 2.0;
    }
    return g;
}

struct Collector {
    const ValidateOptions& opts;
    std::vector<CheckResult>& out;

    void add(const std::string& suite, const std::string& name, double measured, double tol)
    {
        out.push_back({suite, name, measured, tol, std::isfinite(measured) && measured <= tol});
    }
};

inline void suite_lse(std::mt19937_64& eng, Collector& c)
{
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    std::uniform_int_distribution<int> len(1, 30);
    double worst_min = 0.0, worst_max = 0.0, single = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(len(eng));
        for (auto& v : x)
            v = u(eng);
        const double alpha = std::pow(10.0, std::uniform_real_distribution<double>(-1.0, 2.0)(eng));
        const double bound = std::log(static_cast<double>(x.size())) / alpha;
        const double mn = *std::min_element(x.begin(), x.end());
        const double mx = *std::max_element(x.begin(), x.end());
        const double lmin = lse_min(x, alpha);
        const double lmax = lse_max(x, alpha);
        // Excess over the bound, and any violation of the one-sided ordering.
        worst_min = std::max({worst_min, (mn - lmin) - bound, lmin - mn});
        worst_max = std::max({worst_max, (lmax - mx) - bound, mx - lmax});
        const std::vector<double> one{x.front()};
        single = std::max({single, std::abs(lse_min(one, alpha) - one[0]), std::abs(lse_max(one, alpha) - one[0])});
    }
    c.add("lse", "min-within-log(M)/alpha", std::max(worst_min, 0.0), 1e-12);
    c.add("lse", "max-within-log(M)/alpha", std::max(worst_max, 0.0), 1e-12);
    c.add("lse", "single-element-exact", single, 0.0);
}

inline void suite_quadform(std::mt19937_64& eng, Collector& c)
{
    std::uniform_int_distribution<int> nd(1, 8), kd(1, 4), sd(1, 3);
    double rate_err = 0.0, coll_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = nd(eng), k = kd(eng);
        std::vector<int> sizes(k);
        for (auto& s : sizes)
            s = sd(eng);
        const auto in = random_instance(eng, n, sizes, std::uniform_real_distribution<double>(-10.0, 40.0)(eng));
        const PrecoderStack s(n, k, random_stack(eng, n * k));
        for (int m = 0; m < k; ++m) {
            for (int u = 0; u < in.layers.users(); ++u) {
                const double direct = user_rate(m, in.h[u], s, in.noise);
                const double quad = build_ab(m, in.h[u], n, k, in.noise).log2_quotient(s.f);
                rate_err = std::max(rate_err, std::abs(direct - quad));
            }
            if (m == 0)
                continue;
            const int gamma = in.layers.users_below(m);
            double sum_q = 0.0;
            for (int l = 0; l < m; ++l)
                for (int u : in.layers.members(l))
                    sum_q += build_cd(m, in.h[u], gamma, n, k, in.noise).quotient(s.f);
            const double direct = colluding_wiretap_rate(m, in.h, in.layers, s, in.noise);
            const double quad = std::log2(sum_q);
            coll_err = std::max(coll_err, std::abs(direct - quad) / std::max(1.0, std::abs(direct)));
        }
    }
    c.add("quadform", "rate-equals-log2-quotient", rate_err, 1e-10);
    c.add("quadform", "colluding-sum-identity", coll_err, 1e-10);
}

inline void suite_gradient(std::mt19937_64& eng, Collector& c)
{
    const double alpha = 5.0;
    const double step = 1e-6;
    const char* names[] = {"nc", "c", "pf", "noma"};
    for (int variant = 0; variant < 4; ++variant) {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto in = random_instance(eng, 3, {2, 1, 2}, 10.0);
            SmoothedObjective obj;
            if (variant == 0) {
                obj = make_objective_nc(in.h, in.layers, in.noise);
            } else if (variant == 1) {
                obj = make_objective_c(in.h, in.layers, in.noise);
            } else if (variant == 2) {
                const std::vector<double> w{0.7, 1.9, 3.1};
                obj = make_objective_nc(in.h, in.layers, in.noise, w);
            } else {
                std::vector<CVector> est;
                std::vector<CMatrix> phi;
                for (int u = 0; u < 3; ++u) {
                    est.push_back(in.h[u]);
                    const CMatrix e = CMatrix::Map(complex_normal(9, eng).data(), 3, 3) * 0.2;
                    phi.push_back(e * e.adjoint());
                }
                obj = make_objective_noma(est, phi, in.noise);
            }
            const CVector f = random_stack(eng, obj.n_antennas() * obj.n_messages());
            const bool flip = c.opts.inject_b_sign_flip && variant == 0;
            const CVector g = objective_gradient(obj, f, alpha, flip);
            const CVector g_fd = fd_gradient([&](const CVector& x) { return obj.value(x, alpha); }, f, step);
            worst = std::max(worst, (g - g_fd).norm() / std::max(g_fd.norm(), 1e-12));
        }
        c.add("gradient", std::string("analytic-vs-fd-") + names[variant], worst, 1e-5);
    }
}

inline void suite_fixed_point(std::mt19937_64& eng, Collector& c)
{
    GpiConfig cfg;
    cfg.record_trace = false;
    cfg.polish_epsilon = 1e-7;
    double res_worst = 0.0, grad_worst = 0.0, lambda_mismatch = 0.0;
    int converged = 0;
    const int instances = 6;
    for (int trial = 0; trial < instances; ++trial) {
        const auto in = random_instance(eng, 4, {1, 2, 1}, 10.0);
        for (Collusion mode : {Collusion::NonColluding, Collusion::Colluding}) {
            const auto prob = problem_secrecy(mode, in.h, in.layers, in.noise);
            const auto res = gpi_solve(prob, mrt(in.h, in.layers), cfg);
            if (res.trace.status != GpiStatus::Converged)
                continue;
            ++converged;
            const double a = res.trace.final_alpha;
            const auto m = build_iteration_matrices(prob.objective, res.stack.f, a);
            res_worst = std::max(res_worst, nepv_residual(m, res.stack.f));
            grad_worst = std::max(grad_worst, objective_gradient(prob.objective, res.stack.f, a).norm());
            if (m.lambda != prob.objective.value(res.stack.f, a))
                lambda_mismatch += 1.0;
        }
    }
    c.add("fixed-point", "converged-fraction-shortfall", 1.0 - converged / (2.0 * instances), 0.0);
    c.add("fixed-point", "nepv-residual", res_worst, 1e-3);
    c.add("fixed-point", "gradient-norm", grad_worst, 1e-3);
    c.add("fixed-point", "eigenvalue-equals-objective", lambda_mismatch, 0.0);
}

inline void suite_split(std::mt19937_64& eng, Collector& c)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = random_instance(eng, 4, {2, 2}, 20.0);
        const auto obj = make_objective_nc(in.h, in.layers, in.noise);
        CVector f1 = random_stack(eng, 8), f2 = f1;
        for (int t = 0; t < 20; ++t) {
            f1 = gpi_step(build_iteration_matrices(obj, f1, 2.0, 1.0), f1);
            f2 = gpi_step(build_iteration_matrices(obj, f2, 2.0, 37.5), f2);
            worst = std::max(worst, (f1 - f2).norm());
        }
    }
    c.add("split", "iterates-independent-of-split", worst, 1e-10);
}

inline void suite_baseline(std::mt19937_64& eng, Collector& c)
{
    double norm_err = 0.0, leak = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto in = random_instance(eng, 6, {2, 1, 2}, 20.0);
        const auto h = effective_channels(in.h, in.layers);
        const auto m = mrt(in.h, in.layers);
        const auto z = zf(in.h, in.layers).stack;
        norm_err = std::max({norm_err, std::abs(m.norm() - 1.0), std::abs(z.norm() - 1.0)});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j)
                    leak = std::max(leak, std::abs(h.col(i).dot(z.block(j))) / h.col(i).norm());
    }
    c.add("baseline", "unit-total-power", norm_err, 1e-12);
    c.add("baseline", "zf-cross-layer-leakage", leak, 1e-10);
}

inline void suite_channel(std::mt19937_64& eng, Collector& c)
{
    double trace_err = 0.0, kl_err = 0.0, psd = 0.0;
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int n : {1, 2, 4, 8}) {
        const auto arr = AntennaArray::uniform_circular(n);
        for (int t = 0; t < 5; ++t) {
            const UserGeometry g{0, 2.5, ang(eng), kPi / 6.0};
            const auto f = build_covariance(arr, g);
            trace_err = std::max(trace_err, std::abs(f.covariance.trace().real() - n * g.gain) / (n * g.gain));
            const CMatrix rebuilt = f.sqrt_factor * f.sqrt_factor.adjoint();
            kl_err = std::max(kl_err, (rebuilt - f.covariance).norm() / f.covariance.norm());
            Eigen::SelfAdjointEigenSolver<CMatrix> es(f.covariance);
            psd = std::max(psd, -es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
        }
    }
    c.add("channel", "trace-equals-N-beta", trace_err, 1e-12);
    c.add("channel", "kl-factor-reconstructs", kl_err, 1e-8);
    c.add("channel", "covariance-psd", std::max(psd, 0.0), 1e-10);
}

} // namespace vdetail

inline std::vector<CheckResult> run_validation(const ValidateOptions& opts = {})
{
    if (!opts.only.empty() &&
        std::find(validate_suites().begin(), validate_suites().end(), opts.only) == validate_suites().end())
        throw ConfigError("validate: unknown suite '" + opts.only + "'");
    std::vector<CheckResult> out;
    vdetail::Collector c{opts, out};
    auto want = [&](const char* s) { return opts.only.empty() || opts.only == s; };
    // Each suite gets its own stream so filtering does not change results.
    auto eng = [&](std::uint64_t i) { return std::mt19937_64(derive_seed(opts.seed, i)); };
    if (want("lse")) { auto e = eng(1); vdetail::suite_lse(e, c); }
    if (want("quadform")) { auto e = eng(2); vdetail::suite_quadform(e, c); }
    if (want("gradient")) { auto e = eng(3); vdetail::suite_gradient(e, c); }
    if (want("fixed-point")) { auto e = eng(4); vdetail::suite_fixed_point(e, c); }
    if (want("split")) { auto e = eng(5); vdetail::suite_split(e, c); }
    if (want("baseline")) { auto e = eng(6); vdetail::suite_baseline(e, c); }
    if (want("channel")) { auto e = eng(7); vdetail::suite_channel(e, c); }
    return out;
}

inline std::string format_check(const CheckResult& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-40s %.3e %.3e %s", (r.suite + "/" + r.name).c_str(), r.measured, r.tolerance,
                  r.pass ? "PASS" : "FAIL");
    return buf;
}

} // namespace hia
