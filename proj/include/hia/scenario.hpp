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

// Scenario description and its key = value text format.
//
//   # comment
//   format = 1
//   id = fig3_nc
//   variant = nc            (nc | c | pf-nc | pf-c | noma, comma list allowed)
//   ...
//
// Every key may appear at most once. Lists are comma separated.

#pragma once

#include "hia/channel.hpp"
#include "hia/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hia {

inline constexpr int kScenarioFormat = 1;

/// Scenario text could not be parsed; carries the 1-based line and the key.
struct ScenarioError : ConfigError {
    ScenarioError(std::string source, int line, std::string field, const std::string& what)
        : ConfigError(source + ":" + std::to_string(line) + ": " + (field.empty() ? "" : field + ": ") + what),
          line(line), field(std::move(field))
    {
    }
    int line;
    std::string field;
};

enum class Variant { Nc, C, PfNc, PfC, Noma };
enum class RunMode { MonteCarlo, Trace };
enum class AoaPolicy { Uniform, Fixed };
enum class GainPolicy { Unit, Pathloss };

inline const char* to_string(Variant v)
{
    switch (v) {
    case Variant::Nc: return "nc";
    case Variant::C: return "c";
    case Variant::PfNc: return "pf-nc";
    case Variant::PfC: return "pf-c";
    case Variant::Noma: return "noma";
    }
    return "?";
}

inline bool is_pf(Variant v) { return v == Variant::PfNc || v == Variant::PfC; }
inline bool is_colluding(Variant v) { return v == Variant::C || v == Variant::PfC; }

struct Scenario {
    std::string id;
    std::string description;
    std::vector<Variant> variants{Variant::Nc};
    RunMode mode = RunMode::MonteCarlo;

    int n_antennas = 6;
    std::vector<int> layer_sizes;   // explicit layout; empty when sweeping users
    int n_layers = 0;               // K
    std::vector<int> user_grid;     // M values; single entry when layer_sizes is set
    std::vector<double> snr_db{20.0};
    double kappa = 0.0;

    double alpha_init = 10.0;
    double alpha_decay = 0.9;
    double epsilon = 0.01;
    int max_inner_iters = 50;
    int max_alpha_restarts = 30;

    double spread_deg = 30.0;
    AoaPolicy aoa = AoaPolicy::Uniform;
    double aoa_deg = 0.0;
    GainPolicy gain = GainPolicy::Unit;
    double distance_min_m = 100.0;
    double distance_max_m = 500.0;
    PathlossModel pathloss;
    double bandwidth_hz = 10e6;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;

    int draws = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> baselines{"mrt", "zf"};

    int slots = 50;
    double pf_delta = 0.2;
    double pf_mu0 = 1.0;

    int quad_points = 256;

    /// Layer sizes for M users: explicit layout, or M split as evenly as
    /// possible with the remainder going to the lowest layers.
    std::vector<int> layers_for(int m) const
    {
        if (!layer_sizes.empty())
            return layer_sizes;
        std::vector<int> out(n_layers, m / n_layers);
        for (int k = 0; k < m % n_layers; ++k)
            ++out[k];
        return out;
    }

    /// sigma^2 in dBm over the configured bandwidth.
    double noise_power_dbm() const
    {
        return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    }

    /// Transmit power that puts the given SNR at the near-edge distance.
    double tx_power_dbm(double snr) const { return snr + noise_power_dbm() + pathloss_db(distance_min_m, pathloss); }

    void validate() const
    {
        auto fail = [&](const std::string& m) { throw ConfigError("scenario " + id + ": " + m); };
        if (id.empty())
            fail("id is required");
        if (variants.empty())
            fail("variant list is empty");
        const bool noma = std::count(variants.begin(), variants.end(), Variant::Noma) > 0;
        const bool pf = std::any_of(variants.begin(), variants.end(), is_pf);
        if (noma && variants.size() > 1)
            fail("noma cannot be combined with other variants");
        if (pf && !std::all_of(variants.begin(), variants.end(), is_pf))
            fail("pf variants cannot be combined with nc/c");
        if (mode == RunMode::Trace && (noma || pf))
            fail("trace mode supports nc and c only");
        if (n_antennas < 1)
            fail("n_antennas must be >= 1");
        if (n_layers < 1)
            fail("need at least one layer");
        if (user_grid.empty())
            fail("user grid is empty");
        for (int m : user_grid)
            if (m < n_layers)
                fail("every layer needs at least one user");
        if (!layer_sizes.empty()) {
            int m = 0;
            for (int s : layer_sizes) {
                if (s < 1)
                    fail("layer sizes must be positive");
                m += s;
            }
            if (user_grid.size() != 1 || user_grid.front() != m)
                fail("layer sizes must sum to the user count");
        }
        if (noma && !layer_sizes.empty() && !std::all_of(layer_sizes.begin(), layer_sizes.end(), [](int s) { return s == 1; }))
            fail("noma requires singleton layers");
        if (snr_db.empty())
            fail("SNR grid is empty");
        if (!(kappa >= 0.0 && kappa <= 1.0))
            fail("kappa must lie in [0, 1]");
        if (!(alpha_init > 0.0) || !(alpha_decay > 0.0 && alpha_decay < 1.0) || !(epsilon > 0.0))
            fail("invalid alpha schedule or epsilon");
        if (max_inner_iters < 1 || max_alpha_restarts < 0)
            fail("invalid iteration limits");
        if (!(spread_deg > 0.0))
            fail("spread_deg must be positive");
        if (gain == GainPolicy::Pathloss && !(distance_min_m > 0.0 && distance_max_m >= distance_min_m))
            fail("invalid distance range");
        if (draws < 1)
            fail("draws must be >= 1");
        if (pf && slots < 1)
            fail("slots must be >= 1");
        if (pf && !(pf_delta > 0.0 && pf_delta < 1.0))
            fail("pf_delta must lie in (0, 1)");
        if (!(pf_mu0 > 0.0))
            fail("pf_mu0 must be positive");
        for (const auto& b : baselines)
            if (b != "mrt" && b != "zf")
                fail("unknown baseline '" + b + "'");
        if (quad_points < 2)
            fail("quad_points must be >= 2");
    }
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        out.emplace_back(trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

struct FieldParser {
    const std::string& source;
    int line;
    const std::string& key;

    [[noreturn]] void fail(const std::string& what) const { throw ScenarioError(source, line, key, what); }

    double real(std::string_view v) const
    {
        double x = 0.0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
        if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size() || !std::isfinite(x))
            fail("expected a number, got '" + std::string(v) + "'");
        return x;
    }

    long long integer(std::string_view v) const
    {
        long long x = 0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
        if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size())
            fail("expected an integer, got '" + std::string(v) + "'");
        return x;
    }

    int count(std::string_view v) const
    {
        const long long x = integer(v);
        if (x < 0 || x > 1'000'000)
            fail("value out of range");
        return static_cast<int>(x);
    }

    std::vector<double> reals(std::string_view v) const
    {
        std::vector<double> out;
        for (const auto& s : split_list(v))
            out.push_back(real(s));
        return out;
    }

    std::vector<int> counts(std::string_view v) const
    {
        std::vector<int> out;
        for (const auto& s : split_list(v))
            out.push_back(count(s));
        return out;
    }
};

inline Variant parse_variant(const FieldParser& p, const std::string& s)
{
    if (s == "nc") return Variant::Nc;
    if (s == "c") return Variant::C;
    if (s == "pf-nc") return Variant::PfNc;
    if (s == "pf-c") return Variant::PfC;
    if (s == "noma") return Variant::Noma;
    p.fail("unknown variant '" + s + "'");
}

} // namespace detail

/// Documented grammar; also printed by the CLI `schema` subcommand.
inline const char* scenario_schema()
{
    return R"(scenario format 1
  file       := { line }
  line       := blank | "#" text | key "=" value
  list       := value { "," value }
required keys
  format              integer, must be 1
  id                  identifier
  variant             list of nc | c | pf-nc | pf-c | noma
  n_antennas          integer >= 1 (N)
  layer_sizes         list of integers (users per layer, lowest layer first)
    or layers + users layer count K and a list of user counts M to sweep
  snr_db              list of numbers; P/sigma^2 in dB with a unit-norm precoder
optional keys (default)
  description         free text
  mode                monte_carlo | trace (monte_carlo)
  kappa               CSIT error level in [0, 1] (0)
  alpha_init          smoothing start (10)
  alpha_decay         factor in (0, 1) applied on each restart (0.9)
  epsilon             stopping threshold on ||f_t - f_{t-1}|| (0.01)
  max_inner_iters     iterations per alpha (50)
  max_alpha_restarts  alpha restarts before giving up (30)
  spread_deg          angular spread half-width in degrees (30)
  aoa                 uniform | angle in degrees (uniform)
  gain                unit | pathloss (unit)
  distance_min_m      near edge, also the SNR reference distance (100)
  distance_max_m      far edge (500)
  pathloss_pl0_db     pathloss at the reference distance (38)
  pathloss_exponent   (3.5)
  pathloss_ref_m      (1)
  bandwidth_hz        (10e6)
  noise_density_dbm_hz (-174)
  noise_figure_db     (9)
  draws               channel draws or PF seeds (100)
  seed                master seed, unsigned 64-bit (1)
  baselines           list of mrt | zf, or none (mrt, zf)
  slots               PF time slots per seed (50)
  pf_delta            PF averaging factor in (0, 1) (0.2)
  pf_mu0              initial PF average (1)
  quad_points         covariance quadrature nodes (256)
with gain = pathloss, user m has large-scale gain PL(distance_min_m) / PL(d_m), so
snr_db is the SNR of a user at the near edge; sigma^2 = noise_density_dbm_hz +
10 log10(bandwidth_hz) + noise_figure_db and the implied transmit power is reported.
)";
}

inline Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>")
{
    Scenario sc;
    std::map<std::string, int> seen;
    bool have_format = false, have_variant = false, have_n = false, have_snr = false;
    bool have_sizes = false, have_layers = false, have_users = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ScenarioError(source, line_no, "", "expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ScenarioError(source, line_no, "", "missing key");
        if (auto it = seen.find(key); it != seen.end())
            throw ScenarioError(source, line_no, key, "duplicate key (first on line " + std::to_string(it->second) + ")");
        seen[key] = line_no;
        const detail::FieldParser p{source, line_no, key};
        if (value.empty() && key != "description")
            p.fail("empty value");

        if (key == "format") {
            if (p.integer(value) != kScenarioFormat)
                p.fail("unsupported format version '" + std::string(value) + "'");
            have_format = true;
        } else if (key == "id") {
            for (char c : value)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
                    p.fail("id may contain letters, digits, '_' and '-' only");
            sc.id = value;
        } else if (key == "description") {
            sc.description = value;
        } else if (key == "variant") {
            sc.variants.clear();
            for (const auto& s : detail::split_list(value))
                sc.variants.push_back(detail::parse_variant(p, s));
            have_variant = true;
        } else if (key == "mode") {
            if (value == "monte_carlo")
                sc.mode = RunMode::MonteCarlo;
            else if (value == "trace")
                sc.mode = RunMode::Trace;
            else
                p.fail("expected monte_carlo or trace");
        } else if (key == "n_antennas") {
            sc.n_antennas = p.count(value);
            have_n = true;
        } else if (key == "layer_sizes") {
            sc.layer_sizes = p.counts(value);
            have_sizes = true;
        } else if (key == "layers") {
            sc.n_layers = p.count(value);
            have_layers = true;
        } else if (key == "users") {
            sc.user_grid = p.counts(value);
            have_users = true;
        } else if (key == "snr_db") {
            sc.snr_db = p.reals(value);
            have_snr = true;
        } else if (key == "kappa") {
            sc.kappa = p.real(value);
        } else if (key == "alpha_init") {
            sc.alpha_init = p.real(value);
        } else if (key == "alpha_decay") {
            sc.alpha_decay = p.real(value);
        } else if (key == "epsilon") {
            sc.epsilon = p.real(value);
        } else if (key == "max_inner_iters") {
            sc.max_inner_iters = p.count(value);
        } else if (key == "max_alpha_restarts") {
            sc.max_alpha_restarts = p.count(value);
        } else if (key == "spread_deg") {
            sc.spread_deg = p.real(value);
        } else if (key == "aoa") {
            if (value == "uniform") {
                sc.aoa = AoaPolicy::Uniform;
            } else {
                sc.aoa = AoaPolicy::Fixed;
                sc.aoa_deg = p.real(value);
            }
        } else if (key == "gain") {
            if (value == "unit")
                sc.gain = GainPolicy::Unit;
            else if (value == "pathloss")
                sc.gain = GainPolicy::Pathloss;
            else
                p.fail("expected unit or pathloss");
        } else if (key == "distance_min_m") {
            sc.distance_min_m = p.real(value);
        } else if (key == "distance_max_m") {
            sc.distance_max_m = p.real(value);
        } else if (key == "pathloss_pl0_db") {
            sc.pathloss.pl0_db = p.real(value);
        } else if (key == "pathloss_exponent") {
            sc.pathloss.exponent = p.real(value);
        } else if (key == "pathloss_ref_m") {
            sc.pathloss.ref_distance_m = p.real(value);
        } else if (key == "bandwidth_hz") {
            sc.bandwidth_hz = p.real(value);
        } else if (key == "noise_density_dbm_hz") {
            sc.noise_density_dbm_hz = p.real(value);
        } else if (key == "noise_figure_db") {
            sc.noise_figure_db = p.real(value);
        } else if (key == "draws") {
            sc.draws = p.count(value);
        } else if (key == "seed") {
            const long long s = p.integer(value);
            if (s < 0)
                p.fail("seed must be nonnegative");
            sc.seed = static_cast<std::uint64_t>(s);
        } else if (key == "baselines") {
            sc.baselines.clear();
            if (value != "none")
                for (const auto& b : detail::split_list(value)) {
                    if (b != "mrt" && b != "zf")
                        p.fail("unknown baseline '" + b + "'");
                    sc.baselines.push_back(b);
                }
        } else if (key == "slots") {
            sc.slots = p.count(value);
        } else if (key == "pf_delta") {
            sc.pf_delta = p.real(value);
        } else if (key == "pf_mu0") {
            sc.pf_mu0 = p.real(value);
        } else if (key == "quad_points") {
            sc.quad_points = p.count(value);
        } else {
            p.fail("unknown key");
        }
    }

    auto missing = [&](const char* key) { throw ScenarioError(source, line_no, key, "required key missing"); };
    if (!have_format)
        missing("format");
    if (sc.id.empty())
        missing("id");
    if (!have_variant)
        missing("variant");
    if (!have_n)
        missing("n_antennas");
    if (!have_snr)
        missing("snr_db");
    if (have_sizes) {
        if (have_layers || have_users)
            throw ScenarioError(source, seen["layer_sizes"], "layer_sizes", "conflicts with layers/users");
        sc.n_layers = static_cast<int>(sc.layer_sizes.size());
        int m = 0;
        for (int s : sc.layer_sizes)
            m += s;
        sc.user_grid = {m};
    } else if (!(have_layers && have_users)) {
        missing("layer_sizes");
    }
    try {
        sc.validate();
    } catch (const ConfigError& e) {
        throw ScenarioError(source, line_no, "", e.what());
    }
    return sc;
}

} // namespace hia
