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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hia {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;

// Error taxonomy. Everything derives from a std exception so callers that
// only care about "something failed" can catch std::exception.

/// Argument outside the mathematical domain of an operation (kappa > 1,
/// empty LSE list, zero precoder, nonpositive distance, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Channel geometry that cannot produce a finite covariance.
struct InvalidGeometry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Caller broke a documented precondition (unnormalized stack, k out of range).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Inconsistent problem configuration (layer layout, solver variant).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degenerate numerical input (all-zero effective channel).
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic child seed for (parent, a, b) without correlated streams.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b = 0) noexcept
{
    return mix_seed(mix_seed(mix_seed(parent) ^ (a + 0x632be59bd9b4e019ULL)) ^ (b + 0x85157af5ULL));
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace hia
