// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "replab/experiment.hpp"

using nlohmann::json;
using namespace replab;

namespace {

ExperimentOutput run(const json &cfg) { return run_experiment(cfg.dump()); }

}  // namespace

TEST(Experiment, WeingartenTable) {
    const auto out = run({{"command", "wg"}, {"params", {{"m", 2}, {"d", 4}}}});
    ASSERT_EQ(out.exit_code, kExitOk) << out.error;
    const json r = json::parse(out.report);
    EXPECT_EQ(r["replab_version"], version_string());
    EXPECT_EQ(r["results"]["values"]["1+1"], "1/15");
    EXPECT_EQ(r["results"]["values"]["2"], "-1/60");
    EXPECT_EQ(r["results"]["absolute_sum"], "1/12");
    EXPECT_TRUE(r["invariants_hold"].get<bool>());
}

TEST(Experiment, CycleSums) {
    const auto out = run({{"command", "facts"}, {"params", {{"m", 4}, {"d", 4}}}});
    ASSERT_EQ(out.exit_code, kExitOk) << out.error;
    const json r = json::parse(out.report)["results"];
    EXPECT_EQ(r["sum_d_power_cycles"]["brute_force"], "840");
    EXPECT_EQ(r["sum_d_power_even_cycles"]["brute_force"], "72");
}

TEST(Experiment, ConfigErrors) {
    EXPECT_EQ(run({{"command", "wg"}, {"params", {{"m", 7}}}}).exit_code, kExitConfig);
    EXPECT_EQ(run({{"command", "wg"}, {"params", {{"m", 4}, {"d", 2}}}}).exit_code, kExitConfig);
    EXPECT_EQ(run({{"command", "wg"}, {"params", {{"bogus", 1}}}}).exit_code, kExitConfig);
    EXPECT_EQ(run({{"command", "nope"}}).exit_code, kExitConfig);
    EXPECT_EQ(run({{"command", "wg"}, {"colour", "red"}}).exit_code, kExitConfig);
    EXPECT_EQ(run_experiment("{not json").exit_code, kExitConfig);
    EXPECT_EQ(run({{"command", "sim-rqc"}, {"params", {{"k", 1}, {"eps", 0.5}}}}).exit_code, kExitConfig);
    const auto bad = run({{"command", "wg"}, {"params", {{"m", "two"}}}});
    EXPECT_EQ(bad.exit_code, kExitConfig);
    EXPECT_FALSE(bad.error.empty());
}

TEST(Experiment, ReportIndependentOfWorkers) {
    json cfg = {{"command", "design"},
                {"seed", 5},
                {"params", {{"ensemble", "clifford"}, {"n", 1}, {"t", 2}, {"samples", 600}, {"pairs", 600}}}};
    cfg["workers"] = 1;
    const auto one = run(cfg);
    cfg["workers"] = 3;
    const auto three = run(cfg);
    ASSERT_EQ(one.exit_code, kExitOk) << one.error;
    EXPECT_EQ(one.report, three.report);
    EXPECT_EQ(json::parse(one.report)["config"].count("workers"), 0u);
    EXPECT_NE(one.meta.find("generated_at"), std::string::npos);
}

TEST(Experiment, SimulationCsv) {
    const json cfg = {{"command", "sim-mixedness"},
                      {"seed", 3},
                      {"format", "csv"},
                      {"params", {{"n", 1}, {"N", 2}, {"trials", 100}, {"strategy", "standard-basis"}, {"reference", 8}}}};
    const auto out = run(cfg);
    ASSERT_EQ(out.exit_code, kExitOk) << out.error;
    EXPECT_EQ(out.format, "csv");
    EXPECT_EQ(out.report.rfind("# replab ", 0), 0u);
    EXPECT_NE(out.report.find("N,success_rate,wilson_lo,wilson_hi,strategy,advantage,tv_bound"), std::string::npos);
    EXPECT_EQ(out.report, run(cfg).report);
}

TEST(Experiment, DiagnosticsAndTournamentRun) {
    const auto diag = run({{"command", "diagnostics"},
                           {"seed", 1},
                           {"params", {{"n", 1}, {"N", 2}, {"samples", 50}, {"tree", "random-adaptive"}}}});
    ASSERT_EQ(diag.exit_code, kExitOk) << diag.error;
    EXPECT_TRUE(json::parse(diag.report)["invariants_hold"].get<bool>());
    const auto tour = run({{"command", "tournament"},
                           {"seed", 1},
                           {"params", {{"n", 1}, {"alternatives", 3}, {"trials", 20}, {"copies", 40}, {"entangled_copies", 2}}}});
    ASSERT_EQ(tour.exit_code, kExitOk) << tour.error;
}

TEST(Experiment, CommandList) {
    const auto &cmds = experiment_commands();
    for (const char *c : {"wg", "facts", "design", "sim-rqc", "sim-mixedness", "diagnostics", "tournament"})
        EXPECT_NE(std::find(cmds.begin(), cmds.end(), c), cmds.end()) << c;
}
