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

#pragma once

#include "hia/common.hpp"

#include <vector>

namespace hia {

/// Hermitian block-diagonal operator on C^{NK} made of K dense N x N blocks.
/// Only the lower triangle of each block is maintained by the rank updates;
/// call `symmetrize()` before reading blocks directly.
class BlockDiagonal {
public:
    BlockDiagonal() = default;
    BlockDiagonal(int n, int k) : n_(n), k_(k), blocks_(k, CMatrix::Zero(n, n)) {}

    int block_size() const { return n_; }
    int num_blocks() const { return k_; }
    CMatrix& block(int j) { return blocks_[j]; }
    const CMatrix& block(int j) const { return blocks_[j]; }

    void add_identity(double c)
    {
        for (auto& b : blocks_)
            b.diagonal().array() += c;
    }

    /// block j += c * v v^H (lower triangle).
    void add_rank_one(int j, const CVector& v, double c)
    {
        blocks_[j].selfadjointView<Eigen::Lower>().rankUpdate(v, c);
    }

    void add_matrix(int j, const CMatrix& m, double c) { blocks_[j] += c * m; }

    void scale(double c)
    {
        for (auto& b : blocks_)
            b *= c;
    }

    void symmetrize()
    {
        for (auto& b : blocks_) {
            CMatrix full = b.selfadjointView<Eigen::Lower>();
            b = full;
        }
    }

    CVector apply(const CVector& f) const
    {
        CVector out(f.size());
        for (int j = 0; j < k_; ++j)
            out.segment(j * n_, n_).noalias() = blocks_[j].selfadjointView<Eigen::Lower>() * f.segment(j * n_, n_);
        return out;
    }

    /// Per-block Cholesky solve; blocks must be Hermitian positive definite.
    CVector solve(const CVector& rhs) const
    {
        CVector out(rhs.size());
        for (int j = 0; j < k_; ++j) {
            Eigen::LLT<CMatrix, Eigen::Lower> llt(blocks_[j]);
            if (llt.info() != Eigen::Success) {
                // Fall back to a pivoted LDLT for nearly singular blocks.
                Eigen::LDLT<CMatrix, Eigen::Lower> ldlt(blocks_[j]);
                out.segment(j * n_, n_) = ldlt.solve(rhs.segment(j * n_, n_));
            } else {
                out.segment(j * n_, n_) = llt.solve(rhs.segment(j * n_, n_));
            }
        }
        return out;
    }

    CMatrix dense() const
    {
        CMatrix out = CMatrix::Zero(n_ * k_, n_ * k_);
        for (int j = 0; j < k_; ++j)
            out.block(j * n_, j * n_, n_, n_) = blocks_[j].selfadjointView<Eigen::Lower>();
        return out;
    }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<CMatrix> blocks_;
};

} // namespace hia
