#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(FRACHARDY_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

} // namespace

TEST_CASE("constants subcommand: values and exit codes") {
    {
        auto r = run_cli("constants --n 1 --alpha 1");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.output.substr(0, r.output.find('\n')));
        CHECK(std::abs(j.at("kappa").get<double>()) <= 1e-12);
    }
    {
        auto r = run_cli("constants --n 2 --alpha 1.5 --p 2");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.output.substr(0, r.output.find('\n')));
        // the p = 2 constant is exactly twice kappa
        CHECK(j.at("fs_constant").get<double>() ==
              doctest::Approx(2.0 * j.at("kappa").get<double>()).epsilon(1e-9));
        CHECK(j.at("kappa").get<double>() == doctest::Approx(0.36246015765247405));
    }
    {
        auto r = run_cli("constants --n 1 --alpha 2.5");
        CHECK(r.exit_code == 2);
    }
    {
        auto r = run_cli("constants");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("no arguments prints usage and exits 2") {
    auto r = run_cli("");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--help") != std::string::npos);
}

TEST_CASE("weight subcommand emits the schema header") {
    auto r = run_cli(
        "weight --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' --alpha 1.5 --h 0.05");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("# schema=frachardy-weights-v1") != std::string::npos);
    CHECK(r.output.find("dist,width,m_alpha_recip,convex_bound,m_small_recip") !=
          std::string::npos);
}

TEST_CASE("weight subcommand rejects an empty-interior polytope with exit 2") {
    auto r = run_cli(
        "weight --domain '{\"type\":\"polytope\",\"halfspaces\":[{\"normal\":[1,0],"
        "\"offset\":0},{\"normal\":[-1,0],\"offset\":0.5}],\"interior_point\":[0.2,0]}' "
        "--alpha 1.5");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("parameter error") != std::string::npos);
}

TEST_CASE("verify subcommand: pass, degenerate window, negative control") {
    {
        auto r = run_cli(
            "verify --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' --alpha 1.5 "
            "--kind one_d_two_sided --family bumps:2 --h 0.005");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"pass\":true") != std::string::npos);
    }
    {
        auto r = run_cli(
            "verify --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' --alpha 1.0 "
            "--kind one_d_two_sided --family bumps:2 --h 0.005");
        CHECK(r.exit_code == 2);
    }
    {
        auto r = run_cli("verify --alpha 1.5 --kind half_line --family sharpness:4 "
                         "--constant-scale 1.1");
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("verify config echo is canonical (byte-identical round trip)") {
    const std::string base =
        "verify --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' --alpha 1.5 "
        "--kind one_d_two_sided --family bumps:1 --h 0.01 --echo-config";
    auto r1 = run_cli(base);
    auto r2 = run_cli(base);
    CHECK(r1.exit_code == 0);
    const std::string cfg1 = r1.output.substr(0, r1.output.find('\n'));
    const std::string cfg2 = r2.output.substr(0, r2.output.find('\n'));
    CHECK(cfg1 == cfg2);
    CHECK(cfg1.find("\"command\":\"verify\"") != std::string::npos);
}

TEST_CASE("verify reports are bit-identical across worker counts") {
    const char* out1 = "/tmp/fh_cli_w1.jsonl";
    const char* out2 = "/tmp/fh_cli_w2.jsonl";
    auto r1 = run_cli(std::string("verify --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' "
                                  "--alpha 1.5 --kind one_d_two_sided --family bumps:2 "
                                  "--h 0.004 --workers 1 --out ") +
                      out1);
    auto r2 = run_cli(std::string("verify --domain '{\"type\":\"interval\",\"a\":0,\"b\":1}' "
                                  "--alpha 1.5 --kind one_d_two_sided --family bumps:2 "
                                  "--h 0.004 --workers 2 --out ") +
                      out2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(!s1.str().empty());
}

TEST_CASE("quadrature node cache directory is honored") {
    const std::string dir = "/tmp/fh_cache_test";
    std::system(("rm -rf " + dir).c_str());
    const std::string cmd =
        "weight --domain '{\"type\":\"ball\",\"center\":[0,0],\"radius\":1}' "
        "--alpha 1.5 --h 0.2 --sphere-res 64 --out /tmp/fh_weight_cache.csv";
    auto r1 = run_cli(cmd, "FRAC_HARDY_CACHE=" + dir + " ");
    CHECK(r1.exit_code == 0);
    std::ifstream probe(dir + "/sphere_n2_res64.bin");
    CHECK(probe.good()); // node set was cached
    auto r2 = run_cli(cmd, "FRAC_HARDY_CACHE=" + dir + " ");
    CHECK(r2.exit_code == 0); // loaded from cache
}
