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

// MRT and ZF reference precoders over per-layer effective channels
// h_k = sum of the channels of the users in layer k. Both keep the relative
// column norms of their defining formula and apply one global scale so that
// sum_k ||f_k||^2 = 1.

#pragma once

#include "hia/secrecy.hpp"

#include <span>

namespace hia {

/// N x K matrix whose column k is the effective channel of layer k.
inline CMatrix effective_channels(std::span<const CVector> channels, const LayerAssignment& layers)
{
    if (static_cast<int>(channels.size()) != layers.users())
        throw ConfigError("effective_channels: channel count does not match layer assignment");
    const int n = static_cast<int>(channels.front().size());
    CMatrix h = CMatrix::Zero(n, layers.layers());
    for (int k = 0; k < layers.layers(); ++k)
        for (int u : layers.members(k))
            h.col(k) += channels[u];
    return h;
}

inline PrecoderStack stack_from_columns(const CMatrix& f)
{
    const int n = static_cast<int>(f.rows());
    const int k = static_cast<int>(f.cols());
    const double nrm = f.norm();
    if (!(nrm > 0.0))
        throw DegenerateInput("precoder: all-zero effective channel");
    PrecoderStack s(n, k);
    for (int j = 0; j < k; ++j)
        s.block(j) = f.col(j) / nrm;
    return s;
}

inline PrecoderStack mrt(std::span<const CVector> channels, const LayerAssignment& layers)
{
    return stack_from_columns(effective_channels(channels, layers));
}

struct ZfResult {
    PrecoderStack stack;
    bool pseudo_inverse = false;   // H^H H was singular; Moore-Penrose fallback used
};

/// F = H (H^H H)^{-1}; falls back to the pseudo-inverse of H^H when K > N or
/// H is rank deficient.
inline ZfResult zf(std::span<const CVector> channels, const LayerAssignment& layers)
{
    const CMatrix h = effective_channels(channels, layers);
    if (!(h.norm() > 0.0))
        throw DegenerateInput("zf: all-zero effective channel");
    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    const double tol = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        rank += sv(i) > tol ? 1 : 0;

    ZfResult out;
    CMatrix f;
    if (rank == h.cols()) {
        const CMatrix gram = h.adjoint() * h;
        f = h * gram.llt().solve(CMatrix::Identity(h.cols(), h.cols()));
    } else {
        // pinv(H^H) = U diag(1/s) V^H restricted to the numerical rank.
        RVector inv = RVector::Zero(sv.size());
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > tol)
                inv(i) = 1.0 / sv(i);
        f = svd.matrixU() * inv.asDiagonal() * svd.matrixV().adjoint();
        out.pseudo_inverse = true;
    }
    out.stack = stack_from_columns(f);
    return out;
}

} // namespace hia
