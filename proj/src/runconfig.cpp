#include "vqlm/runconfig.hpp"

#include "vqlm/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace vqlm {
namespace {

double parse_real(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw usage_error("bad number for " + what + ": '" + s + "'");
    return v;
}

long parse_int(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw usage_error("bad integer for " + what + ": '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        out.push_back(parse_real(item, what));
    if (out.empty()) throw usage_error("empty list for " + what);
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Verify: return "verify";
        case Command::Energy: return "energy";
        case Command::Coefficients: return "coefficients";
        case Command::LoopInvariant: return "loop-invariant";
    }
    return "verify";
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args, const char* env_grid_n) {
    if (args.empty()) throw usage_error("missing command");

    RunConfig cfg;
    const std::string& cmd = args[0];
    if (cmd == "verify") cfg.command = Command::Verify;
    else if (cmd == "energy") cfg.command = Command::Energy;
    else if (cmd == "coefficients") cfg.command = Command::Coefficients;
    else if (cmd == "loop-invariant") cfg.command = Command::LoopInvariant;
    else throw usage_error("unknown command '" + cmd + "'");

    if (env_grid_n != nullptr) {
        long n = parse_int(env_grid_n, "VQLM_GRID_N");
        if (n < 8 || n > 4096) throw usage_error("VQLM_GRID_N out of range [8,4096]");
        cfg.grid_n = static_cast<int>(n);
    }

    bool seen_profile = false, seen_grid = false, seen_d = false, seen_c = false;
    bool seen_output = false, seen_format = false;

    size_t i = 1;
    auto next_value = [&](const std::string& flag, const std::string& inline_val,
                          bool has_inline) -> std::string {
        if (has_inline) return inline_val;
        if (++i >= args.size()) throw usage_error("flag " + flag + " needs a value");
        return args[i];
    };

    for (; i < args.size(); ++i) {
        std::string flag = args[i];
        std::string inline_val;
        bool has_inline = false;
        auto eq = flag.find('=');
        if (flag.rfind("--", 0) == 0 && eq != std::string::npos) {
            inline_val = flag.substr(eq + 1);
            flag = flag.substr(0, eq);
            has_inline = true;
        }

        if (flag == "--profile") {
            if (seen_profile) throw usage_error("duplicate --profile");
            seen_profile = true;
            cfg.profile = next_value(flag, inline_val, has_inline);
        } else if (flag == "--grid-n") {
            if (seen_grid) throw usage_error("duplicate --grid-n");
            seen_grid = true;
            long n = parse_int(next_value(flag, inline_val, has_inline), "--grid-n");
            if (n < 8 || n > 4096) throw usage_error("--grid-n out of range [8,4096]");
            cfg.grid_n = static_cast<int>(n);
        } else if (flag == "--d") {
            if (seen_d) throw usage_error("duplicate --d");
            seen_d = true;
            cfg.d_list = parse_list(next_value(flag, inline_val, has_inline), "--d");
            for (double d : cfg.d_list)
                if (!(d >= 10.0)) throw usage_error("--d values must be >= 10");
        } else if (flag == "--c") {
            if (seen_c) throw usage_error("duplicate --c");
            seen_c = true;
            cfg.c_list = parse_list(next_value(flag, inline_val, has_inline), "--c");
            for (double c : cfg.c_list)
                if (!(std::fabs(c) < 0.99))
                    throw usage_error("--c values must satisfy |c| < 0.99");
        } else if (flag == "--output") {
            if (seen_output) throw usage_error("duplicate --output");
            seen_output = true;
            cfg.output_path = next_value(flag, inline_val, has_inline);
        } else if (flag == "--format") {
            if (seen_format) throw usage_error("duplicate --format");
            seen_format = true;
            cfg.format = next_value(flag, inline_val, has_inline);
            if (cfg.format != "csv" && cfg.format != "json")
                throw usage_error("--format must be csv or json");
        } else if (flag == "--tol") {
            std::string kv = next_value(flag, inline_val, has_inline);
            auto pos = kv.find('=');
            if (pos == std::string::npos || pos == 0)
                throw usage_error("--tol expects name=value");
            std::string name = kv.substr(0, pos);
            double v = parse_real(kv.substr(pos + 1), "--tol " + name);
            if (!(v > 0.0)) throw usage_error("--tol value must be positive");
            cfg.tolerance_overrides[name] = v;
        } else {
            throw usage_error("unknown flag '" + args[i] + "'");
        }
    }
    return cfg;
}

std::string config_text(const RunConfig& c) {
    std::string out = command_name(c.command);
    out += " --profile " + c.profile;
    out += " --grid-n " + std::to_string(c.grid_n);
    out += " --d " + join(c.d_list);
    out += " --c " + join(c.c_list);
    out += " --format " + c.format;
    if (!c.output_path.empty()) out += " --output " + c.output_path;
    for (const auto& [k, v] : c.tolerance_overrides)
        out += " --tol " + k + "=" + format_double(v);
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    std::vector<std::string> args;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) args.push_back(tok);
    return parse_args(args, nullptr);
}

std::string usage_text() {
    return
        "usage: vqlm <command> [flags]\n"
        "\n"
        "commands\n"
        "  verify          run the full check battery; exit 0 if all pass\n"
        "  energy          sphere energies along the distance schedule\n"
        "  coefficients    extracted vs closed-form expansion coefficients\n"
        "  loop-invariant  latitude-circle invariant, numeric vs closed form\n"
        "\n"
        "flags\n"
        "  --profile P     mass profile (default tanh_step:m0=1,a=0.5,lambda=2)\n"
        "                  presets: minkowski | constant:m0=V |\n"
        "                  affine:m0=V,a=V | tanh_step:m0=V,a=V,lambda=V |\n"
        "                  bump:m0=V,a=V,lambda=V; optional mref=V (default m0)\n"
        "  --grid-n N      latitude grid size, 8..4096 (default 128;\n"
        "                  env VQLM_GRID_N overrides the default)\n"
        "  --d LIST        comma-separated distances >= 10\n"
        "                  (default 250,500,1000,2000); four or more values\n"
        "                  spanning a factor of 4, all >= 50, enable the\n"
        "                  numeric energy route\n"
        "  --c LIST        comma-separated latitudes, |c| < 0.99\n"
        "                  (default -0.8,-0.5,-0.2,0.2,0.5,0.8)\n"
        "  --output PATH   write the report there (atomic); default stdout\n"
        "  --format F      csv (default) or json\n"
        "  --tol NAME=V    override one verify tolerance (repeatable)\n"
        "\n"
        "report columns\n"
        "  verify          name, criterion, value, tolerance, pass, detail\n"
        "  energy          d, e_closed, e_reduced, e_numeric, disc_reduced,\n"
        "                  disc_numeric, dec (numeric columns are null unless\n"
        "                  the schedule supports the fit)\n"
        "  coefficients    z, then extracted/closed/error triples for\n"
        "                  sigma_a1, area_a1, area_a2, curvature_a1,\n"
        "                  curvature_a2, alpha_a1, divergence_a1\n"
        "  loop-invariant  c, numeric, closed, error\n"
        "\n"
        "exit codes: 0 success, 1 numerical failure, 2 usage error\n";
}

} // namespace vqlm
