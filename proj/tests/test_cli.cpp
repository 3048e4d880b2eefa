// End-to-end checks of the command-line tool: exit codes, report formats,
// determinism, and environment handling.  Drives the installed binary through
// the shell, capturing stdout/stderr into files under ./cli_test_out.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

static int g_failures = 0;

#define CHECK(cond)                                                              \
    do {                                                                         \
        if (!(cond)) {                                                           \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);          \
            ++g_failures;                                                        \
        }                                                                        \
    } while (0)

namespace {

const fs::path kOut = "cli_test_out";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args, const std::string& tag) {
    std::string cmd = std::string(VQLM_CLI_PATH) + " " + args + " >" +
                      (kOut / (tag + ".out")).string() + " 2>" +
                      (kOut / (tag + ".err")).string();
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

double json_number(const std::string& body, const std::string& key) {
    std::string marker = "\"" + key + "\": ";
    auto pos = body.find(marker);
    if (pos == std::string::npos) return -1e300;
    return std::strtod(body.c_str() + pos + marker.size(), nullptr);
}

void test_help_and_usage_errors() {
    CHECK(run("--help", "help") == 0);
    CHECK(contains(slurp(kOut / "help.out"), "usage: vqlm"));

    CHECK(run("energy --frobnicate 1", "badflag") == 2);
    std::string err = slurp(kOut / "badflag.err");
    CHECK(contains(err, "error:"));
    CHECK(contains(err, "usage: vqlm"));

    CHECK(run("energy --profile frob", "badprofile") == 2);
    CHECK(contains(slurp(kOut / "badprofile.err"), "error:"));

    CHECK(run("", "nocmd") == 2);
}

void test_energy_reports() {
    CHECK(run("energy --profile minkowski --d 100", "mink") == 0);
    std::string csv = slurp(kOut / "mink.out");
    CHECK(contains(csv, "d,e_closed,e_reduced,e_numeric,disc_reduced,disc_numeric,dec"));
    CHECK(contains(csv, "100,0,0,,0,,1"));

    CHECK(run("energy --profile affine:m0=1,a=0.5 --d 10 --format json", "aff10") == 0);
    std::string js = slurp(kOut / "aff10.out");
    double ec = json_number(js, "e_closed");
    CHECK(std::abs(ec - 1.0 / 1200.0) <= 1e-17);
    CHECK(contains(js, "\"e_numeric\": null"));

    CHECK(run("energy --profile affine:m0=1,a=0.5 --grid-n 48", "affsched") == 0);
    std::string full = slurp(kOut / "affsched.out");
    CHECK(count_lines(full) == 5);  // header + four schedule rows
    CHECK(!contains(full, ",,"));   // numeric route populated
}

void test_determinism() {
    const std::string args =
        "coefficients --profile tanh_step:m0=1,a=0.5,lambda=2 --grid-n 32 --output ";
    CHECK(run(args + (kOut / "c1.csv").string(), "det1") == 0);
    CHECK(run(args + (kOut / "c2.csv").string(), "det2") == 0);
    std::string a = slurp(kOut / "c1.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(kOut / "c2.csv"));
    CHECK(count_lines(a) == 33);  // header + one row per node

    const std::string jargs =
        "energy --grid-n 48 --format json --output ";
    CHECK(run(jargs + (kOut / "e1.json").string(), "det3") == 0);
    CHECK(run(jargs + (kOut / "e2.json").string(), "det4") == 0);
    std::string j = slurp(kOut / "e1.json");
    CHECK(!j.empty());
    CHECK(j == slurp(kOut / "e2.json"));
}

void test_loop_report() {
    CHECK(run("loop-invariant --profile affine:m0=1,a=0.5 --c 0.5 --format json",
              "loop") == 0);
    std::string js = slurp(kOut / "loop.out");
    double closed = json_number(js, "closed");
    CHECK(std::abs(closed - 3.0 / 256.0) <= 1e-15);
    CHECK(json_number(js, "error") <= 1e-10);
}

void test_verify_paths() {
    CHECK(run("verify --grid-n 64", "vok") == 0);
    std::string out = slurp(kOut / "vok.out");
    CHECK(contains(out, "checks:"));
    CHECK(contains(out, " 0 failed"));
    CHECK(!contains(out, "FAIL"));

    CHECK(run("verify --grid-n 64 --tol grid.weight_sum=1e-30", "vfail") == 1);
    std::string fout = slurp(kOut / "vfail.out");
    CHECK(contains(fout, "FAIL"));
    CHECK(contains(fout, "failed: grid.weight_sum"));
}

void test_output_failures() {
    CHECK(run("loop-invariant --output /nonexistent_vqlm_dir/x.csv", "obad") == 1);
    CHECK(contains(slurp(kOut / "obad.err"), "error:"));
}

void test_env_grid() {
    setenv("VQLM_GRID_N", "16", 1);
    CHECK(run("coefficients --profile affine:m0=1,a=0.5", "env16") == 0);
    CHECK(count_lines(slurp(kOut / "env16.out")) == 17);  // header + 16 nodes

    CHECK(run("coefficients --profile affine:m0=1,a=0.5 --grid-n 12", "env12") == 0);
    CHECK(count_lines(slurp(kOut / "env12.out")) == 13);  // flag beats env

    setenv("VQLM_GRID_N", "banana", 1);
    CHECK(run("energy", "envbad") == 2);
    unsetenv("VQLM_GRID_N");
}

} // namespace

int main() {
    fs::remove_all(kOut);
    fs::create_directories(kOut);

    test_help_and_usage_errors();
    test_energy_reports();
    test_determinism();
    test_loop_report();
    test_verify_paths();
    test_output_failures();
    test_env_grid();

    if (g_failures == 0) {
        std::printf("cli tests passed\n");
        return 0;
    }
    std::printf("cli tests: %d failure(s)\n", g_failures);
    return 1;
}
