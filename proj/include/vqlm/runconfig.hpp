#pragma once

// Command-line configuration.  Parsing is strict: unknown flags, duplicate
// flags, malformed numbers, and out-of-range values are all rejected with a
// message suitable for usage output.  A config renders to a canonical
// command-line string and parses back to an identical config (paths without
// spaces), which pins the defaults.

#include <map>
#include <string>
#include <vector>

#include <stdexcept>

namespace vqlm {

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Verify, Energy, Coefficients, LoopInvariant };

struct RunConfig {
    Command command = Command::Verify;
    std::string profile = "tanh_step:m0=1,a=0.5,lambda=2";
    int grid_n = 128;
    std::vector<double> d_list = {250.0, 500.0, 1000.0, 2000.0};
    std::vector<double> c_list = {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8};
    std::string output_path;  // empty = stdout
    std::string format = "csv";
    std::map<std::string, double> tolerance_overrides;
};

// args excludes the program name; env_grid_n is the VQLM_GRID_N value or
// nullptr.  Throws usage_error on any problem.
RunConfig parse_args(const std::vector<std::string>& args, const char* env_grid_n);

// Canonical textual form; parse_config_text(config_text(c)) == c.
std::string config_text(const RunConfig& c);
RunConfig parse_config_text(const std::string& text);

std::string usage_text();

} // namespace vqlm
