#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "penumbra/fieldmap.hpp"

namespace {

using penumbra::RunConfig;

penumbra::AxisSpec parse_axis(const std::string& spec) {
    penumbra::AxisSpec a;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a.start, &a.stop, &a.count) != 3)
        throw CLI::ValidationError("--grid", "axis must be start:stop:count, got '" + spec + "'");
    return a;
}

void parse_grid(const std::string& spec, RunConfig& cfg) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--grid", "expected two axes separated by a comma");
    cfg.axis1 = parse_axis(spec.substr(0, comma));
    cfg.axis2 = parse_axis(spec.substr(comma + 1));
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("k")) cfg.params.k = j["k"].get<double>();
    if (j.contains("h")) cfg.params.h = j["h"].get<double>();
    if (j.contains("big_threshold")) cfg.params.big_threshold = j["big_threshold"].get<double>();
    if (j.contains("small_threshold"))
        cfg.params.small_threshold = j["small_threshold"].get<double>();
    if (j.contains("grid")) {
        parse_axis(j["grid"]["axis1"].get<std::string>());
        cfg.axis1 = parse_axis(j["grid"]["axis1"].get<std::string>());
        cfg.axis2 = parse_axis(j["grid"]["axis2"].get<std::string>());
    }
    if (j.contains("coords"))
        cfg.coords = j["coords"] == "physical" ? penumbra::CoordKind::Physical
                                               : penumbra::CoordKind::Stretched;
    if (j.contains("method")) {
        const std::string m = j["method"].get<std::string>();
        cfg.method = m == "direct"       ? penumbra::Method::Direct
                     : m == "asymptotic" ? penumbra::Method::Asymptotic
                                         : penumbra::Method::Both;
    }
    if (j.contains("output"))
        cfg.output = j["output"] == "json" ? penumbra::OutputFormat::Json
                                           : penumbra::OutputFormat::Csv;
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("modes")) cfg.mode_count = j["modes"].get<int>();
    if (j.contains("rel_tol")) cfg.quadrature.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("abs_floor")) cfg.quadrature.abs_floor = j["abs_floor"].get<double>();
    if (j.contains("max_subdivisions"))
        cfg.quadrature.max_subdivisions = j["max_subdivisions"].get<int>();
    if (j.contains("gate_mid")) cfg.gate_mid = j["gate_mid"].get<double>();
    if (j.contains("gate_deep")) cfg.gate_deep = j["gate_deep"].get<double>();
}

int with_output(const RunConfig& cfg, const std::function<int(std::ostream&)>& fn) {
    if (cfg.out_path.empty()) return fn(std::cout);
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << cfg.out_path << "\n";
        return 1;
    }
    return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-frequency wavefield maps near a boundary curvature jump"};
    app.set_help_flag("--help", "print help");  // frees -h/--h for the curvature jump
    app.require_subcommand(1);

    RunConfig cfg;
    // staged flag values; applied after the config file so flags override it
    struct Staged {
        double k = 0, h = 0, rel_tol = 0, big = 0, small = 0;
        int modes = 0;
        std::string grid, coords, method, output, out;
        bool has_k = false, has_h = false, has_rel = false, has_big = false,
             has_small = false, has_modes = false;
    } st;
    std::string config_path;
    int zeros_n = 5;
    double inject_w1_error = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option_function<double>("--k", [&](double v) { st.k = v; st.has_k = true; },
                                         "wavenumber k");
        sub->add_option_function<double>("--h", [&](double v) { st.h = v; st.has_h = true; },
                                         "curvature jump h");
        sub->add_option("--grid", st.grid, "grid 'a0:a1:n,b0:b1:m'");
        sub->add_option("--coords", st.coords, "stretched|physical");
        sub->add_option("--method", st.method, "direct|asymptotic|both");
        sub->add_option("--output", st.output, "csv|json");
        sub->add_option("--out", st.out, "output path (default stdout)");
        sub->add_option_function<int>("--modes",
                                      [&](int v) { st.modes = v; st.has_modes = true; },
                                      "creeping modes for D6");
        sub->add_option_function<double>(
            "--rel-tol", [&](double v) { st.rel_tol = v; st.has_rel = true; },
            "quadrature relative tolerance");
        sub->add_option_function<double>(
            "--big-threshold", [&](double v) { st.big = v; st.has_big = true; },
            "cutoff realizing >> 1");
        sub->add_option_function<double>(
            "--small-threshold", [&](double v) { st.small = v; st.has_small = true; },
            "cutoff realizing << 1");
        sub->add_option("--config", config_path, "JSON config (flags override)");
    };

    CLI::App* cmd_fieldmap = app.add_subcommand("fieldmap", "field map over a grid");
    cmd_fieldmap->set_help_flag("--help", "print help");
    add_common(cmd_fieldmap);
    CLI::App* cmd_compare = app.add_subcommand("compare", "direct vs asymptotic comparison");
    cmd_compare->set_help_flag("--help", "print help");
    add_common(cmd_compare);
    CLI::App* cmd_zeros = app.add_subcommand("zeros", "zeros of w1' and creeping modes");
    cmd_zeros->set_help_flag("--help", "print help");
    cmd_zeros->add_option("-n,--count", zeros_n, "number of zeros (1..20)");
    cmd_zeros->add_option_function<double>("--k", [&](double v) { st.k = v; st.has_k = true; },
                                           "wavenumber k");
    cmd_zeros->add_option_function<double>("--h", [&](double v) { st.h = v; st.has_h = true; },
                                           "curvature jump h");
    CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the invariant suite");
    cmd_selftest->set_help_flag("--help", "print help");
    cmd_selftest->add_option("--inject-w1-error", inject_w1_error,
                             "test hook: relative perturbation applied to w1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1
    }

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        // flags override the config file
        if (st.has_k) cfg.params.k = st.k;
        if (st.has_h) cfg.params.h = st.h;
        if (st.has_rel) cfg.quadrature.rel_tol = st.rel_tol;
        if (st.has_big) cfg.params.big_threshold = st.big;
        if (st.has_small) cfg.params.small_threshold = st.small;
        if (st.has_modes) cfg.mode_count = st.modes;
        if (!st.grid.empty()) parse_grid(st.grid, cfg);
        if (!st.out.empty()) cfg.out_path = st.out;
        if (!st.coords.empty())
            cfg.coords = st.coords == "physical" ? penumbra::CoordKind::Physical
                                                 : penumbra::CoordKind::Stretched;
        if (!st.method.empty())
            cfg.method = st.method == "direct"       ? penumbra::Method::Direct
                         : st.method == "asymptotic" ? penumbra::Method::Asymptotic
                                                     : penumbra::Method::Both;
        if (!st.output.empty())
            cfg.output = st.output == "json" ? penumbra::OutputFormat::Json
                                             : penumbra::OutputFormat::Csv;

        if (cmd_fieldmap->parsed()) {
            return with_output(cfg, [&](std::ostream& out) {
                return penumbra::run_fieldmap(cfg, out).exit_code;
            });
        }
        if (cmd_compare->parsed()) {
            return with_output(cfg, [&](std::ostream& out) {
                const auto sum = penumbra::run_compare(cfg, out);
                std::cerr << "compare: " << sum.rows.size() << " points, " << sum.failures
                          << " failures\n";
                return sum.exit_code;
            });
        }
        if (cmd_zeros->parsed()) {
            penumbra::run_zeros(zeros_n, cfg.params, std::cout);
            return 0;
        }
        if (cmd_selftest->parsed()) {
            const int failures = penumbra::run_selftest(std::cout, inject_w1_error);
            std::cout << (failures == 0 ? "selftest: all checks passed\n"
                                        : "selftest: FAILURES present\n");
            return failures == 0 ? 0 : 2;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const penumbra::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
