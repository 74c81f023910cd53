// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "config_file.hpp"
#include "experiment.hpp"

using namespace relaysim;
using namespace relaysim::runner;
using Catch::Approx;

namespace {

ExperimentConfig small_mc() {
    ExperimentConfig c;
    c.kind = "mc";
    c.system = {.m = 16, .n = 2, .tau_c = 196, .tau_p = 0, .seed = 5};
    c.trials = 200;
    c.sweep = {"p_u", {-10, 0, 10}};
    return c;
}

std::string csv_bytes(const Table& t) {
    std::ostringstream os;
    emit_csv(t, os);
    return os.str();
}

}  // namespace

TEST_CASE("sweep schema: requested outputs plus CI columns", "[experiment]") {
    ExperimentConfig c = small_mc();
    c.outputs = {"mc_af", "exact_af"};
    const Table t = run_experiment(c);
    REQUIRE(t.columns == std::vector<std::string>{"p_u", "mc_af", "mc_af_ci", "exact_af"});
    REQUIRE(t.rows.size() == 3);
    for (const auto& row : t.rows) {
        REQUIRE(row.size() == 4);
        CHECK(row[1] > 0.0);
        CHECK(row[3] > 0.0);
    }
    // the sweep axis is echoed in column 0, in grid order
    CHECK(t.rows[0][0] == -10.0);
    CHECK(t.rows[2][0] == 10.0);
}

TEST_CASE("validation failures: empty grid, bad outputs, decreasing grid", "[experiment]") {
    {
        ExperimentConfig c = small_mc();
        c.sweep.grid.clear();
        CHECK_THROWS_WITH(run_experiment(c), Catch::Matchers::ContainsSubstring("grid is empty"));
    }
    {
        ExperimentConfig c = small_mc();
        c.sweep.grid = {3, 2, 1};
        CHECK_THROWS_WITH(run_experiment(c),
                          Catch::Matchers::ContainsSubstring("strictly increasing"));
    }
    {
        ExperimentConfig c = small_mc();
        c.outputs = {"no_such_column"};
        CHECK_THROWS_WITH(run_experiment(c),
                          Catch::Matchers::ContainsSubstring("unknown output column"));
    }
    {
        ExperimentConfig c = small_mc();
        c.sweep.variable = "N";
        c.sweep.grid = {2, 3.5};
        const auto issues = validate_experiment(c);
        CHECK_FALSE(issues.empty());
    }
}

TEST_CASE("scaling sweeps approach the classified limit", "[experiment]") {
    ExperimentConfig c;
    c.kind = "scaling";
    c.system = {.m = 128, .n = 5, .tau_c = 196, .tau_p = 0, .seed = 0};
    c.scaling.scenario = Scenario::A;
    c.scaling.gamma = 1.0;
    c.e_u_db = 10.0;
    c.e_r_db = 20.0;
    c.e_p_db = 10.0;
    c.protocol = "af";
    c.outputs = {"scaled_af", "limit_af"};
    c.sweep = {"M", {100, 1000, 10000, 100000}};
    const Table t = run_experiment(c);
    double prev_gap = 1e18;
    for (const auto& row : t.rows) {
        const double gap = std::abs(row[1] - row[2]);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(std::abs(t.rows.back()[1] - t.rows.back()[2]) / t.rows.back()[2] < 0.02);
}

TEST_CASE("CSV layout: header plus one line per row, nan token, 12 digits", "[experiment]") {
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.123456789012345}, {2.0, std::nan("")}, {3.0, 5e-7}};
    const std::string text = csv_bytes(t);
    CHECK(text == "a,b\n1,0.123456789012\n2,nan\n3,5e-07\n");

    Table m = t;
    m.metadata = {"note"};
    CHECK(csv_bytes(m).rfind("# note\n", 0) == 0);
}

TEST_CASE("identical config and seed give byte-identical CSV output", "[experiment]") {
    ExperimentConfig c = small_mc();
    c.outputs = {"mc_af", "mc_df"};
    const std::string a = csv_bytes(run_experiment(c));
    const std::string b = csv_bytes(run_experiment(c));
    CHECK(a == b);
    c.system.seed = 6;
    const std::string d = csv_bytes(run_experiment(c));
    CHECK(a != d);
}

TEST_CASE("config files parse sections, report line and field errors", "[experiment]") {
    const std::string text =
        "# demo\n"
        "[system]\n"
        "M = 32\n"
        "N = 2\n"
        "seed = 9\n"
        "[powers]\n"
        "p_u = -3\n"
        "p_r = 2Npu\n"
        "[sweep]\n"
        "variable = p_u\n"
        "grid = -10:5:10\n"
        "[run]\n"
        "kind = approx\n"
        "outputs = approx_af, approx_df\n";
    ExperimentConfig c;
    apply_config_file(ConfigFile::parse(text), c);
    CHECK(c.system.m == 32);
    CHECK(c.system.seed == 9);
    CHECK(c.couple_pr_to_2n_pu);
    CHECK(c.p_u_db == -3.0);
    CHECK(c.kind == "approx");
    REQUIRE(c.sweep.grid.size() == 5);
    CHECK(c.sweep.grid[1] == -5.0);
    CHECK(c.outputs == std::vector<std::string>{"approx_af", "approx_df"});
    CHECK_NOTHROW(run_experiment(c));

    CHECK_THROWS_WITH(ConfigFile::parse("[system]\nM 32\n"),
                      Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(ConfigFile::parse("M = 32\n"),
                      Catch::Matchers::ContainsSubstring("line 1"));
    {
        ExperimentConfig bad;
        CHECK_THROWS_WITH(apply_config_file(ConfigFile::parse("[system]\nM = lots\n"), bad),
                          Catch::Matchers::ContainsSubstring("system.M"));
    }
}

TEST_CASE("grid parser accepts lists and ranges", "[experiment]") {
    CHECK(parse_grid("1,2,4") == std::vector<double>{1, 2, 4});
    CHECK(parse_grid("0:0.5:2") == std::vector<double>{0, 0.5, 1, 1.5, 2});
    CHECK_THROWS(parse_grid("0:-1:5"));
}

TEST_CASE("unknown preset is rejected, names are listed", "[experiment]") {
    CHECK_THROWS_WITH(run_preset("fig-nope", "/tmp", 0, 0),
                      Catch::Matchers::ContainsSubstring("unknown preset"));
    CHECK(preset_names().size() == 10);
}
