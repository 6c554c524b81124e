// Copyright 2026 The qsensor Authors
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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("qsensor_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the CLI with stderr folded into the captured output.
Run run(const std::string &args) {
    std::string cmd = std::string(QSENSOR_CLI_PATH) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        out.append(buf.data(), n);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string path(const std::string &name) {
    return (scratch_dir() / name).string();
}

double json_number(const std::string &file, const std::string &key) {
    auto j = nlohmann::json::parse(slurp(file));
    return j.at(key).get<double>();
}

}  // namespace

TEST(cli, single_qubit_is_incapable) {
    auto r = run("analyze --scheme t1 -N 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verdict: incapable: x0=0"), std::string::npos) << r.out;
}

TEST(cli, chain_is_identifiable) {
    auto r = run("analyze --scheme g1 -N 4 --trials 1 --perturbations 5");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("verdict: identifiable in magnitude"), std::string::npos) << r.out;
}

TEST(cli, orthogonal_scheme) {
    auto r = run("analyze --scheme g3 -N 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("incapable: orthogonal initial states"), std::string::npos) << r.out;
}

TEST(cli, inadmissible_initial_state) {
    auto r = run("analyze --scheme g2 -N 2 --initial xa");
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_EQ(run("analyze --scheme nope").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(cli, simulate_is_deterministic) {
    std::string a = path("det_a.csv"), b = path("det_b.csv");
    std::string common = "simulate --scheme g1 -N 3 --set ha=1 --set hb=0.7 --set h1=-0.5 --set h2=1.2 --noise 1e-3 --seed 5";
    ASSERT_EQ(run(common + " --record " + a).code, 0);
    ASSERT_EQ(run(common + " --record " + b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST(cli, single_qubit_record_warns) {
    auto r = run("simulate --scheme t1 -N 2 --set hb=0.5 --set h1=0.9 --record " + path("t1.csv"));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("warning:"), std::string::npos) << r.out;
}

TEST(cli, chain_round_trip) {
    std::string rec = path("g1.csv"), js = path("g1.json");
    std::string truth = "--scheme g1 -N 5 --set ha=1 --set hb=0.8 --set h1=-1.1 --set h2=0.6 --set h3=0.9 --set h4=-0.7";
    ASSERT_EQ(run("simulate " + truth + " --record " + rec).code, 0);
    auto r = run("estimate " + truth + " --record " + rec + " --json " + js);
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_LT(json_number(js, "max_abs_error"), 1e-6);
}

TEST(cli, yz_round_trip) {
    std::string rec = path("g2.csv"), js = path("g2.json");
    std::string truth = "--scheme g2 -N 2 --set ha=0.9 --set hb=-0.7 --set h1=1.1";
    ASSERT_EQ(run("simulate " + truth + " --count 1000 --record " + rec).code, 0);
    auto r = run("estimate " + truth + " --record " + rec + " --json " + js);
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_LT(json_number(js, "max_abs_error"), 1e-6);
}

TEST(cli, refuses_single_qubit_estimate) {
    std::string rec = path("t1e.csv");
    ASSERT_EQ(run("simulate --scheme t1 -N 2 --set hb=0.5 --set h1=0.9 --record " + rec).code, 0);
    EXPECT_EQ(run("estimate --scheme t1 -N 2 --record " + rec).code, 3);
}

TEST(cli, corrupted_record) {
    std::string rec = path("bad.csv");
    {
        std::ofstream o(rec);
        o << "t,y,sigma,seed,scheme\n0,0,0,1,g1\n0.1,zz,0,1,g1\n";
    }
    auto r = run("estimate --scheme g1 -N 2 --record " + rec);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("row 3"), std::string::npos) << r.out;
}

TEST(cli, json_report_is_deterministic_and_renders) {
    std::string a = path("an_a.json"), b = path("an_b.json");
    std::string cmd = "analyze --scheme g1 -N 2 --trials 1 --perturbations 3 --seed 9";
    auto first = run(cmd + " --json " + a);
    ASSERT_EQ(first.code, 0);
    ASSERT_EQ(run(cmd + " --json " + b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    auto rendered = run("report --from " + a);
    EXPECT_EQ(rendered.code, 0);
    EXPECT_EQ(rendered.out, first.out);
}

TEST(cli, oracle_check) {
    auto r = run("oracle-check --scheme g1 -N 3");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("model_vs_quantum.pass: true"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("opposite sign"), std::string::npos) << r.out;
}

TEST(cli, config_file) {
    std::string cfg = path("run.ini"), rec = path("cfg.csv");
    {
        std::ofstream o(cfg);
        o << "[sensor]\nscheme = g1\nn_chain = 2\n\n[parameters]\nha = 1\nhb = 0.6\nh1 = 0.9\n\n"
          << "[simulation]\ndt = 0.05\ncount = 200\n\n[output]\nrecord = " << rec << "\n";
    }
    auto r = run("simulate -c " + cfg);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("samples: 200"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(rec));
    {
        std::ofstream o(cfg);
        o << "[sensor]\nscheme = g1\ncolour = blue\n";
    }
    EXPECT_EQ(run("analyze -c " + cfg).code, 2);
}
