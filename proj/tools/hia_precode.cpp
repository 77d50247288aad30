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

// hia_precode: scenario runner, convergence tracer and self-check front end.
//
// Exit codes: 0 success, 1 validation failure, 2 usage / parse / missing
// scenario, 3 numerical failure during a run.

#include "hia/bundled.hpp"
#include "hia/harness.hpp"
#include "hia/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kValidateFail = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunArgs {
    std::string scenario;
    std::string out;
    std::string json;
    std::int64_t seed = -1;
    int draws = 0;
    int jobs = 0;
};

int verbosity = 0;

void log(int level, const std::string& msg)
{
    if (verbosity >= level)
        std::cerr << msg << '\n';
}

/// A path to a scenario file, or the id of a bundled scenario.
hia::Scenario load_scenario(const RunArgs& a)
{
    hia::Scenario sc;
    if (fs::is_regular_file(a.scenario)) {
        std::ifstream in(a.scenario);
        if (!in)
            throw UsageError("cannot read scenario file " + a.scenario);
        std::stringstream ss;
        ss << in.rdbuf();
        sc = hia::parse_scenario(ss.str(), a.scenario);
    } else if (auto b = hia::find_bundled(a.scenario)) {
        sc = *b;
    } else {
        throw UsageError("no scenario file or bundled scenario named '" + a.scenario + "'");
    }
    if (a.seed >= 0)
        sc.seed = static_cast<std::uint64_t>(a.seed);
    if (a.draws > 0)
        sc.draws = a.draws;
    sc.validate();
    return sc;
}

/// Writes through a temporary so a failed run never leaves a partial file.
void write_atomically(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw UsageError("cannot open output " + path);
        out << content;
        if (!out)
            throw UsageError("write failed for " + path);
    }
    fs::rename(tmp, path);
}

void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_atomically(path, content);
}

nlohmann::json rows_json(const std::vector<hia::SummaryRow>& rows)
{
    auto arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"scenario", r.scenario}, {"method", r.method}, {"snr_db", r.snr_db}, {"users", r.users},
                       {"message", r.message}, {"mean_rate_bits", r.mean}, {"stderr", r.stderr_},
                       {"draws", r.draws}, {"seed", r.seed}});
    return arr;
}

nlohmann::json scenario_json(const hia::Scenario& sc)
{
    nlohmann::json j{{"id", sc.id}, {"seed", sc.seed}, {"draws", sc.draws}, {"n_antennas", sc.n_antennas}};
    if (sc.gain == hia::GainPolicy::Pathloss) {
        j["noise_power_dbm"] = sc.noise_power_dbm();
        j["tx_power_dbm"] = sc.tx_power_dbm(sc.snr_db.front());
    }
    return j;
}

/// Median converging-run iterations per GPI method, for the JSON mirror.
nlohmann::json iteration_json(const std::vector<hia::TrialResult>& trials)
{
    std::map<std::string, std::vector<int>> it;
    for (const auto& t : trials)
        for (const auto& m : t.methods)
            if (m.method.rfind("gpi", 0) == 0)
                it[m.method].push_back(m.iterations);
    nlohmann::json j = nlohmann::json::object();
    for (auto& [name, v] : it) {
        std::sort(v.begin(), v.end());
        j[name] = {{"median_iterations", v[v.size() / 2]}, {"trials", v.size()}};
    }
    return j;
}

std::string trace_csv(const hia::Scenario& sc, int jobs)
{
    const auto tr = hia::trace_experiment(sc, jobs);
    std::ostringstream os;
    hia::write_trace_csv(os, sc.id, tr);
    for (const auto& r : tr.runs)
        log(1, r.method + " draw " + std::to_string(r.draw) + ": " +
                   (r.trace.status == hia::GpiStatus::Converged ? "converged" : "iteration cap") + " after " +
                   std::to_string(r.trace.final_iterations) + " iterations at alpha " +
                   hia::format_number(r.trace.final_alpha));
    return os.str();
}

int cmd_run(const RunArgs& a)
{
    const auto sc = load_scenario(a);
    log(1, "running " + sc.id + " with " + std::to_string(sc.draws) + " draws");
    if (sc.mode == hia::RunMode::Trace) {
        emit(a.out, trace_csv(sc, a.jobs));
        return kOk;
    }
    std::ostringstream os;
    nlohmann::json j{{"scenario", scenario_json(sc)}};
    if (hia::is_pf(sc.variants.front())) {
        const auto pf = hia::pf_loop(sc, a.jobs);
        hia::write_summary_csv(os, pf.rows);
        std::ostringstream cdf;
        hia::write_cdf_csv(cdf, sc.id, pf);
        j["rows"] = rows_json(pf.rows);
        j["final_mu"] = pf.pf.final_mu;
        if (!a.out.empty() && a.out != "-")
            write_atomically(a.out + ".cdf.csv", cdf.str());
    } else {
        const auto mc = hia::monte_carlo(sc, a.jobs);
        hia::write_summary_csv(os, mc.rows);
        j["rows"] = rows_json(mc.rows);
        j["iterations"] = iteration_json(mc.trials);
    }
    emit(a.out, os.str());
    if (!a.json.empty())
        write_atomically(a.json, j.dump(2) + "\n");
    return kOk;
}

int cmd_trace(RunArgs a)
{
    auto sc = load_scenario(a);
    for (auto& v : sc.variants) {
        if (v == hia::Variant::Noma)
            throw UsageError("trace: noma scenarios cannot be traced");
        if (v == hia::Variant::PfNc)
            v = hia::Variant::Nc;
        if (v == hia::Variant::PfC)
            v = hia::Variant::C;
    }
    sc.mode = hia::RunMode::Trace;
    emit(a.out, trace_csv(sc, a.jobs));
    return kOk;
}

int cmd_validate(const std::string& only, const std::string& fault)
{
    hia::ValidateOptions opts;
    opts.only = only;
    if (!fault.empty()) {
        if (fault != "b-sign")
            throw UsageError("unknown fault '" + fault + "'");
        opts.inject_b_sign_flip = true;
    }
    bool ok = true;
    for (const auto& r : hia::run_validation(opts)) {
        std::cout << hia::format_check(r) << '\n';
        ok = ok && r.pass;
    }
    return ok ? kOk : kValidateFail;
}

int cmd_scenarios(const std::string& show)
{
    for (const auto& b : hia::bundled_scenarios()) {
        if (!show.empty()) {
            if (b.id == show) {
                std::cout << b.text;
                return kOk;
            }
            continue;
        }
        const auto sc = hia::parse_scenario(std::string(b.text), std::string(b.id));
        std::cout << b.id << '\t' << sc.description << '\n';
    }
    if (!show.empty())
        throw UsageError("no bundled scenario named '" + show + "'");
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secure multi-layer precoding simulator"};
    app.require_subcommand(1, 1);
    app.add_flag("-v,--verbose", verbosity, "Progress messages on stderr (repeat for more)");

    RunArgs run_args, trace_args;
    auto add_run_flags = [](CLI::App* sub, RunArgs& a) {
        sub->add_option("--scenario", a.scenario, "Scenario file or bundled id")->required();
        sub->add_option("--out", a.out, "Output CSV path (default stdout)");
        sub->add_option("--seed", a.seed, "Override the master seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--draws", a.draws, "Override the draw count")->check(CLI::PositiveNumber);
        sub->add_option("--jobs", a.jobs, "Worker threads (default $HIA_PRECODE_JOBS or 1)")
            ->check(CLI::PositiveNumber);
    };
    auto* run = app.add_subcommand("run", "Run a scenario and write the summary CSV");
    add_run_flags(run, run_args);
    run->add_option("--json", run_args.json, "Also write a JSON mirror to this path");
    auto* trace = app.add_subcommand("trace", "Write per-iteration objective and residual for a scenario");
    add_run_flags(trace, trace_args);

    std::string only, fault;
    auto* validate = app.add_subcommand("validate", "Run the built-in numerical self checks");
    validate->add_option("--only", only, "Run a single suite")->check(CLI::IsMember(hia::validate_suites()));
    validate->add_option("--inject-fault", fault, "Break a builder on purpose (b-sign)")->group("");

    std::string show;
    auto* scenarios = app.add_subcommand("scenarios", "List bundled scenarios");
    scenarios->add_option("--show", show, "Print one bundled scenario file");
    auto* schema = app.add_subcommand("schema", "Print the scenario and output schemas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*run)
            return cmd_run(run_args);
        if (*trace)
            return cmd_trace(trace_args);
        if (*validate)
            return cmd_validate(only, fault);
        if (*scenarios)
            return cmd_scenarios(show);
        if (*schema) {
            std::cout << hia::scenario_schema() << '\n' << hia::output_schema();
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const hia::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
