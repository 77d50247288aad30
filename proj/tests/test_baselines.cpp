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

#include "hia/baselines.hpp"
#include "hia/channel.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hia;

namespace {

std::vector<CVector> channels(std::uint64_t seed, int n, int m)
{
    std::mt19937_64 eng(seed);
    std::vector<CVector> h;
    for (int u = 0; u < m; ++u)
        h.push_back(complex_normal(n, eng));
    return h;
}

} // namespace

TEST(Baselines, EffectiveChannelSumsLayerMembers)
{
    const auto h = channels(1, 3, 4);
    const auto layers = LayerAssignment({{0, 2}, {1, 3}});
    const CMatrix e = effective_channels(h, layers);
    EXPECT_LT((e.col(0) - (h[0] + h[2])).norm(), 1e-15);
    EXPECT_LT((e.col(1) - (h[1] + h[3])).norm(), 1e-15);
}

TEST(Baselines, MrtIsScaledEffectiveChannel)
{
    const auto h = channels(2, 4, 6);
    const std::vector<int> sizes{2, 2, 2};
    const auto layers = LayerAssignment::from_sizes(sizes);
    const auto s = mrt(h, layers);
    const CMatrix e = effective_channels(h, layers);
    EXPECT_TRUE(s.is_unit(1e-14));
    for (int k = 0; k < 3; ++k)
        EXPECT_LT((s.block(k) - e.col(k) / e.norm()).norm(), 1e-14);
}

TEST(Baselines, ZfNullsOtherLayers)
{
    const auto h = channels(3, 6, 6);
    const std::vector<int> sizes{2, 2, 2};
    const auto layers = LayerAssignment::from_sizes(sizes);
    const auto z = zf(h, layers);
    EXPECT_FALSE(z.pseudo_inverse);
    EXPECT_TRUE(z.stack.is_unit(1e-14));
    const CMatrix e = effective_channels(h, layers);
    // H^H F is diagonal with equal entries under global normalization.
    CMatrix f(6, 3);
    for (int k = 0; k < 3; ++k)
        f.col(k) = z.stack.block(k);
    const CMatrix g = e.adjoint() * f;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                EXPECT_LT(std::abs(g(i, j)), 1e-12);
            }
    EXPECT_NEAR(std::abs(g(0, 0) - g(1, 1)), 0.0, 1e-12);
}

TEST(Baselines, ZfFallsBackToPseudoInverse)
{
    // More layers than antennas.
    const auto h = channels(4, 2, 3);
    const auto layers = LayerAssignment::singletons(3);
    const auto z = zf(h, layers);
    EXPECT_TRUE(z.pseudo_inverse);
    EXPECT_TRUE(z.stack.is_unit(1e-14));
    // Columns equal pinv(H^H) up to the global scale.
    const CMatrix e = effective_channels(h, layers);
    const CMatrix pinv = e.adjoint().completeOrthogonalDecomposition().pseudoInverse();
    CMatrix f(2, 3);
    for (int k = 0; k < 3; ++k)
        f.col(k) = z.stack.block(k);
    EXPECT_LT((f - pinv / pinv.norm()).norm(), 1e-10);
}

TEST(Baselines, RankDeficientChannelUsesPseudoInverse)
{
    auto h = channels(5, 4, 2);
    h[1] = h[0] * cplx(2.0, 1.0);
    const auto z = zf(h, LayerAssignment::singletons(2));
    EXPECT_TRUE(z.pseudo_inverse);
    EXPECT_TRUE(z.stack.f.allFinite());
}

TEST(Baselines, ZeroChannelIsDegenerate)
{
    const std::vector<CVector> h{CVector::Zero(3), CVector::Zero(3)};
    const auto layers = LayerAssignment::singletons(2);
    EXPECT_THROW(mrt(h, layers), DegenerateInput);
    EXPECT_THROW(zf(h, layers), DegenerateInput);
    EXPECT_THROW(effective_channels(std::span<const CVector>(h.data(), 1), layers), ConfigError);
}
