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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

fs::path scratch()
{
    const auto dir = fs::temp_directory_path() / ("hia_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome run(const std::string& args)
{
    const auto out = scratch() / "stdout.txt";
    const std::string cmd = std::string(HIA_PRECODE_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST(Cli, ScenariosListsBundledEntries)
{
    const auto r = run("scenarios");
    EXPECT_EQ(r.code, 0);
    EXPECT_GE(count_lines(r.out), 7);
    EXPECT_NE(r.out.find("fig3_nc"), std::string::npos);
}

TEST(Cli, ShowPrintsParseableScenario)
{
    const auto r = run("scenarios --show fig3_nc");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n_antennas = 6"), std::string::npos);
    EXPECT_NE(r.out.find("layer_sizes = 2, 2, 2"), std::string::npos);
}

TEST(Cli, SchemaDocumentsBothFormats)
{
    const auto r = run("schema");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("scenario format 1"), std::string::npos);
    EXPECT_NE(r.out.find("scenario,method,snr_db,users,message,mean_rate_bits,stderr,draws,seed"), std::string::npos);
    EXPECT_NE(r.out.find("scenario,method,draw,restart,iteration,alpha,lambda,residual"), std::string::npos);
}

TEST(Cli, MissingScenarioExitsTwoWithoutOutput)
{
    const auto out = scratch() / "missing.csv";
    fs::remove(out);
    const auto r = run("run --scenario " + (scratch() / "does_not_exist.txt").string() + " --out " + out.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_FALSE(fs::exists(out.string() + ".partial"));
}

TEST(Cli, ParseErrorExitsTwoWithoutOutput)
{
    const auto file = scratch() / "bad.txt";
    std::ofstream(file) << "format = 1\nid = bad\nvariant = nc\nn_antennas = x\n";
    const auto out = scratch() / "bad.csv";
    fs::remove(out);
    EXPECT_EQ(run("run --scenario " + file.string() + " --out " + out.string()).code, 2);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, NoSubcommandIsUsageError)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("run").code, 2);
}

TEST(Cli, RunTwiceIsByteIdentical)
{
    const auto a = scratch() / "a.csv", b = scratch() / "b.csv";
    EXPECT_EQ(run("run --scenario fig3_nc --draws 2 --seed 7 --out " + a.string()).code, 0);
    EXPECT_EQ(run("run --scenario fig3_nc --draws 2 --seed 7 --jobs 2 --out " + b.string()).code, 0);
    const auto sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b));
    EXPECT_NE(sa.find(",7\n"), std::string::npos);
}

TEST(Cli, ScenarioFileRunsWithJsonMirror)
{
    const auto file = scratch() / "small.txt";
    std::ofstream(file) << "format = 1\nid = small\nvariant = c\nn_antennas = 3\nlayer_sizes = 1, 1\nsnr_db = 10\ndraws = 2\n";
    const auto out = scratch() / "small.csv", js = scratch() / "small.json";
    EXPECT_EQ(run("run --scenario " + file.string() + " --out " + out.string() + " --json " + js.string()).code, 0);
    EXPECT_EQ(count_lines(slurp(out)), 1 + 3 * 3);
    EXPECT_NE(slurp(js).find("\"mean_rate_bits\""), std::string::npos);
}

TEST(Cli, TraceScenarioEmitsIterationColumns)
{
    const auto out = scratch() / "trace.csv";
    EXPECT_EQ(run("run --scenario fig5_trace --draws 1 --out " + out.string()).code, 0);
    const auto s = slurp(out);
    EXPECT_EQ(s.substr(0, s.find('\n')), "scenario,method,draw,restart,iteration,alpha,lambda,residual");
    EXPECT_NE(s.find("gpi-hia-nc"), std::string::npos);
    EXPECT_NE(s.find("gpi-hia-c"), std::string::npos);
}

TEST(Cli, TraceSubcommand)
{
    const auto r = run("trace --scenario fig3_c --draws 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("gpi-hia-c"), std::string::npos);
    EXPECT_EQ(run("trace --scenario fig2_noma --draws 1").code, 2);
}

TEST(Cli, PfRunWritesCdf)
{
    const auto file = scratch() / "pf.txt";
    std::ofstream(file) << "format = 1\nid = pf\nvariant = pf-nc\nn_antennas = 3\nlayer_sizes = 1, 1\nsnr_db = 20\n"
                           "gain = pathloss\nslots = 3\ndraws = 2\n";
    const auto out = scratch() / "pf.csv";
    EXPECT_EQ(run("run --scenario " + file.string() + " --out " + out.string()).code, 0);
    EXPECT_NE(slurp(out).find(",jain,"), std::string::npos);
    EXPECT_NE(slurp(out.string() + ".cdf.csv").find("rate_bits,cdf"), std::string::npos);
}

TEST(Cli, ValidatePassesAndFilters)
{
    const auto all = run("validate");
    EXPECT_EQ(all.code, 0);
    EXPECT_EQ(all.out.find("FAIL"), std::string::npos);
    const auto one = run("validate --only gradient");
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(count_lines(one.out), 4);
    EXPECT_EQ(one.out.find("lse/"), std::string::npos);
    // Every line: name, measured, tolerance, verdict.
    std::istringstream in(all.out);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream f(line);
        std::string name, verdict;
        double measured, tol;
        ASSERT_TRUE(static_cast<bool>(f >> name >> measured >> tol >> verdict)) << line;
        EXPECT_EQ(verdict, "PASS");
    }
}

TEST(Cli, InjectedSignFlipFailsValidation)
{
    const auto r = run("validate --only gradient --inject-fault b-sign");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("analytic-vs-fd-nc"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UnknownSuiteIsUsageError)
{
    EXPECT_EQ(run("validate --only nothing").code, 2);
}
