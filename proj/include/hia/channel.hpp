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

// One-ring spatially correlated channels on a uniform circular array,
// Karhunen-Loeve sampling and the kappa-parameterized imperfect-CSIT model.

#pragma once

#include "hia/common.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace hia {

/// Uniform circular array, positions in wavelength units.
struct AntennaArray {
    int n_antennas = 0;
    std::vector<std::array<double, 2>> positions;

    /// Radius giving half-wavelength spacing between neighbouring elements.
    /// A single antenna sits at the origin.
    static double radius(int n)
    {
        if (n < 2)
            return 0.0;
        const double a = 2.0 * kPi / n;
        return 0.5 / std::sqrt(std::pow(1.0 - std::cos(a), 2) + std::pow(std::sin(a), 2));
    }

    static AntennaArray uniform_circular(int n)
    {
        if (n < 1)
            throw DomainError("uniform_circular: need at least one antenna");
        AntennaArray arr;
        arr.n_antennas = n;
        const double d = radius(n);
        arr.positions.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double phi = 2.0 * kPi * i / n;
            arr.positions.push_back({d * std::cos(phi), d * std::sin(phi)});
        }
        return arr;
    }
};

/// Large-scale gain (linear), angle of arrival and angular spread in radians.
struct UserGeometry {
    int layer = 0;
    double gain = 1.0;
    double aoa = 0.0;
    double spread = kPi / 6.0;
};

struct CovarianceFactors {
    CMatrix covariance;    // R, N x N
    CMatrix eigvecs;       // U, N x r
    RVector eigvals;       // Lambda, r positive entries (descending)
    CMatrix sqrt_factor;   // U * Lambda^{1/2}, N x r

    int n_antennas() const { return static_cast<int>(covariance.rows()); }
    int rank() const { return static_cast<int>(eigvals.size()); }
};

struct ChannelRealization {
    CVector h;
    CVector g;
};

struct CsitEstimate {
    CVector h_hat;
    CMatrix error_cov;   // Phi
    double kappa = 0.0;
};

struct CovarianceOptions {
    int quad_points = 256;
    double tol_rank = 1e-10;
};

/// One-ring covariance by midpoint quadrature over [aoa - spread, aoa + spread].
inline CovarianceFactors build_covariance(const AntennaArray& array, const UserGeometry& geom,
                                          const CovarianceOptions& opts = {})
{
    if (opts.quad_points < 2)
        throw DomainError("build_covariance: quad_points must be >= 2");
    if (!std::isfinite(geom.gain) || !std::isfinite(geom.aoa) || !std::isfinite(geom.spread))
        throw InvalidGeometry("build_covariance: non-finite geometry");
    if (geom.gain < 0.0 || geom.spread <= 0.0)
        throw InvalidGeometry("build_covariance: need gain >= 0 and spread > 0");
    for (const auto& p : array.positions)
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
            throw InvalidGeometry("build_covariance: non-finite antenna position");

    const int n = array.n_antennas;
    const int q = opts.quad_points;
    std::vector<double> cx(q), sx(q);
    const double step = 2.0 * geom.spread / q;
    for (int t = 0; t < q; ++t) {
        const double x = geom.aoa - geom.spread + (t + 0.5) * step;
        cx[t] = std::cos(x);
        sx[t] = std::sin(x);
    }

    CMatrix r(n, n);
    for (int a = 0; a < n; ++a) {
        r(a, a) = cplx(geom.gain, 0.0);
        for (int b = a + 1; b < n; ++b) {
            const double dx = array.positions[a][0] - array.positions[b][0];
            const double dy = array.positions[a][1] - array.positions[b][1];
            cplx acc{0.0, 0.0};
            for (int t = 0; t < q; ++t) {
                const double phase = -2.0 * kPi * (cx[t] * dx + sx[t] * dy);
                acc += cplx(std::cos(phase), std::sin(phase));
            }
            r(a, b) = geom.gain * acc / static_cast<double>(q);
            r(b, a) = std::conj(r(a, b));
        }
    }
    const CMatrix rh = r.adjoint();
    r = (r + rh) * 0.5;

    CovarianceFactors out;
    out.covariance = r;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    const RVector& ev = es.eigenvalues();   // ascending
    const double top = ev.size() ? ev(ev.size() - 1) : 0.0;
    std::vector<int> keep;
    if (top > 0.0)
        for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i)
            if (ev(i) > opts.tol_rank * top)
                keep.push_back(i);

    const int rank = static_cast<int>(keep.size());
    out.eigvecs.resize(n, rank);
    out.eigvals.resize(rank);
    for (int j = 0; j < rank; ++j) {
        out.eigvecs.col(j) = es.eigenvectors().col(keep[j]);
        out.eigvals(j) = ev(keep[j]);
    }
    out.sqrt_factor = out.eigvecs * out.eigvals.cwiseSqrt().asDiagonal();
    return out;
}

/// i.i.d. CN(0, 1) vector.
template <class Engine>
CVector complex_normal(int n, Engine& eng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CVector v(n);
    for (int i = 0; i < n; ++i) {
        const double re = nd(eng);
        const double im = nd(eng);
        v(i) = cplx(re, im);
    }
    return v;
}

inline ChannelRealization sample_channel(const CovarianceFactors& f, std::uint64_t seed)
{
    std::mt19937_64 eng(seed);
    ChannelRealization out;
    out.g = complex_normal(f.rank(), eng);
    out.h = f.rank() > 0 ? CVector(f.sqrt_factor * out.g) : CVector::Zero(f.n_antennas());
    return out;
}

/// Estimate h_hat = U Lambda^{1/2} (sqrt(1 - kappa^2) g + kappa v); g must be the
/// generator of the true channel.
inline CsitEstimate sample_csit(const CovarianceFactors& f, const CVector& g, double kappa, std::uint64_t seed)
{
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("sample_csit: kappa must lie in [0, 1]");
    if (g.size() != f.rank())
        throw ContractViolation("sample_csit: generator size does not match covariance rank");

    std::mt19937_64 eng(seed);
    const CVector v = complex_normal(f.rank(), eng);
    CsitEstimate out;
    out.kappa = kappa;
    const int n = f.n_antennas();
    if (f.rank() == 0) {
        out.h_hat = CVector::Zero(n);
        out.error_cov = CMatrix::Zero(n, n);
        return out;
    }
    const CVector mix = std::sqrt(1.0 - kappa * kappa) * g + kappa * v;
    out.h_hat = f.sqrt_factor * mix;
    const double scale = 2.0 - 2.0 * std::sqrt(1.0 - kappa * kappa);
    CMatrix phi = f.sqrt_factor * scale * f.sqrt_factor.adjoint();
    const CMatrix ph = phi.adjoint();
    out.error_cov = (phi + ph) * 0.5;
    return out;
}

/// Log-distance pathloss. Defaults: PL0 = 38 dB at d0 = 1 m, exponent 3.5.
struct PathlossModel {
    double pl0_db = 38.0;
    double exponent = 3.5;
    double ref_distance_m = 1.0;
};

inline double pathloss_db(double distance_m, const PathlossModel& m = {})
{
    if (!(distance_m > 0.0))
        throw DomainError("pathloss: distance must be positive");
    return m.pl0_db + 10.0 * m.exponent * std::log10(distance_m / m.ref_distance_m);
}

/// Linear large-scale gain beta = 10^(-PL/10).
inline double pathloss_gain(double distance_m, const PathlossModel& m = {})
{
    return std::pow(10.0, -pathloss_db(distance_m, m) / 10.0);
}

} // namespace hia
