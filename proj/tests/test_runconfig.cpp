#include "vqlm/runconfig.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using namespace vqlm;

namespace {

bool same_config(const RunConfig& a, const RunConfig& b) {
    return a.command == b.command && a.profile == b.profile && a.grid_n == b.grid_n &&
           a.d_list == b.d_list && a.c_list == b.c_list && a.output_path == b.output_path &&
           a.format == b.format && a.tolerance_overrides == b.tolerance_overrides;
}

} // namespace

TEST_CASE("bare command keeps the documented defaults") {
    RunConfig cfg = parse_args({"verify"}, nullptr);
    CHECK(cfg.command == Command::Verify);
    CHECK(cfg.profile == "tanh_step:m0=1,a=0.5,lambda=2");
    CHECK(cfg.grid_n == 128);
    CHECK(cfg.d_list == std::vector<double>{250.0, 500.0, 1000.0, 2000.0});
    CHECK(cfg.c_list == std::vector<double>{-0.8, -0.5, -0.2, 0.2, 0.5, 0.8});
    CHECK(cfg.output_path.empty());
    CHECK(cfg.format == "csv");
    CHECK(cfg.tolerance_overrides.empty());
}

TEST_CASE("every flag lands in the config") {
    RunConfig cfg = parse_args({"energy", "--profile", "affine:m0=1,a=0.5", "--grid-n", "64",
                                "--d", "100,200,400,800", "--c", "0.1,-0.3", "--output",
                                "out.csv", "--format", "json", "--tol", "grid.weight_sum=1e-3",
                                "--tol", "loop.matches_closed=2e-8"},
                               nullptr);
    CHECK(cfg.command == Command::Energy);
    CHECK(cfg.profile == "affine:m0=1,a=0.5");
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.d_list == std::vector<double>{100.0, 200.0, 400.0, 800.0});
    CHECK(cfg.c_list == std::vector<double>{0.1, -0.3});
    CHECK(cfg.output_path == "out.csv");
    CHECK(cfg.format == "json");
    REQUIRE(cfg.tolerance_overrides.size() == 2);
    CHECK(cfg.tolerance_overrides.at("grid.weight_sum") == 1e-3);
    CHECK(cfg.tolerance_overrides.at("loop.matches_closed") == 2e-8);
}

TEST_CASE("--flag=value form works") {
    RunConfig cfg = parse_args({"coefficients", "--grid-n=32", "--format=json",
                                "--d=50,100", "--tol=seriesx.exact_recovery=1e-9"},
                               nullptr);
    CHECK(cfg.command == Command::Coefficients);
    CHECK(cfg.grid_n == 32);
    CHECK(cfg.format == "json");
    CHECK(cfg.d_list == std::vector<double>{50.0, 100.0});
    CHECK(cfg.tolerance_overrides.at("seriesx.exact_recovery") == 1e-9);
}

TEST_CASE("malformed invocations are rejected") {
    CHECK_THROWS_AS(parse_args({}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"status"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--frob", "1"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--grid-n"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--grid-n", "abc"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--grid-n", "4"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--grid-n", "5000"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--grid-n", "64", "--grid-n", "32"}, nullptr),
                    usage_error);
    CHECK_THROWS_AS(parse_args({"energy", "--d", "5,100"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"energy", "--d="}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"loop-invariant", "--c", "0.999"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--format", "xml"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--tol", "noequals"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--tol", "=5"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--tol", "a=-1"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--tol", "a=0"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--tol", "a=nan"}, nullptr), usage_error);
    CHECK_THROWS_AS(parse_args({"verify", "--profile", "p", "--profile", "q"}, nullptr),
                    usage_error);
}

TEST_CASE("environment grid size sits between default and flag") {
    CHECK(parse_args({"verify"}, "64").grid_n == 64);
    CHECK(parse_args({"verify", "--grid-n", "32"}, "64").grid_n == 32);
    CHECK(parse_args({"verify"}, "4096").grid_n == 4096);
    CHECK_THROWS_AS(parse_args({"verify"}, "xyz"), usage_error);
    CHECK_THROWS_AS(parse_args({"verify"}, "4097"), usage_error);
    CHECK_THROWS_AS(parse_args({"verify"}, "7"), usage_error);
}

TEST_CASE("config text is canonical and round-trips") {
    RunConfig cfg = parse_args({"verify"}, nullptr);
    CHECK(same_config(parse_config_text(config_text(cfg)), cfg));

    RunConfig full = parse_args({"energy", "--profile", "bump:m0=1,a=0.25,lambda=3",
                                 "--grid-n", "96", "--d", "125,250,500,1000", "--c", "0.4",
                                 "--output", "report.json", "--format", "json", "--tol",
                                 "energy.route_equivalence=1e-11"},
                                nullptr);
    CHECK(same_config(parse_config_text(config_text(full)), full));

    const std::string canonical =
        "loop-invariant --profile affine:m0=1,a=0.5 --grid-n 64 --d 100,200 "
        "--c 0.5,-0.5 --format json --output out.csv --tol a=0.5";
    CHECK(config_text(parse_config_text(canonical)) == canonical);
}

TEST_CASE("usage text names the commands and exit codes") {
    std::string u = usage_text();
    CHECK(u.find("verify") != std::string::npos);
    CHECK(u.find("energy") != std::string::npos);
    CHECK(u.find("coefficients") != std::string::npos);
    CHECK(u.find("loop-invariant") != std::string::npos);
    CHECK(u.find("VQLM_GRID_N") != std::string::npos);
    CHECK(u.find("exit codes") != std::string::npos);
}
