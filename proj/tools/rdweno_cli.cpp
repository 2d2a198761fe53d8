// Command-line front end: solve one config, run a table family, or list presets.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rdweno/config.hpp"
#include "rdweno/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rdweno::ConfigError("", "cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_summary(const rdweno::RunReport& r) {
    const auto& c = r.config;
    std::printf("%s %s N=%d CFL=%g T=%g: %s", std::string(to_string(c.model.kind)).c_str(),
                std::string(to_string(c.scheme.kind)).c_str(), c.n_cells, c.cfl, c.t_final,
                r.status == rdweno::RunStatus::Ok ? "OK" : "BLOWUP");
    if (r.status == rdweno::RunStatus::Blowup) std::printf(" at t=%.6g", r.blowup_time);
    std::printf(" after %lld steps (%.2f s)\n", static_cast<long long>(r.steps), r.wall_seconds);
    if (r.norms) {
        static constexpr const char* names[] = {"u", "v"};
        for (std::size_t s = 0; s < r.norms->size(); ++s) {
            const auto& n = (*r.norms)[s];
            std::printf("  %s: L1=%.6e L2=%.6e Linf=%.6e\n", names[s], n.l1, n.l2, n.linf);
        }
    }
    if (r.front_speed) std::printf("  front speed %.6g (exact %.6g)\n", *r.front_speed, exact_speed(c.model));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sixth-order FD/WENO solver for 1D reaction-diffusion traveling waves"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto* solve = app.add_subcommand("solve", "Run a single configuration");
    solve->add_option("--config", config_path, "JSON config file")->required();
    solve->add_option("--override", overrides, "key.path=value, applied on top of the config file");

    std::string family;
    std::string out_dir = ".";
    int max_cells = 0;
    auto* table = app.add_subcommand("table", "Run every configuration of a table family and write <family>.csv");
    table->add_option("--family", family, "Table family")->required()->check(CLI::IsMember(rdweno::table_families()));
    table->add_option("--out", out_dir, "Output directory");
    table->add_option("--max-cells", max_cells, "Skip runs with more cells than this (0: no limit)");

    auto* list = app.add_subcommand("list-presets", "List preset names and what they configure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*solve) {
            const auto report = rdweno::run(rdweno::parse_config(read_file(config_path), overrides));
            print_summary(report);
            if (!report.config.out_dir.empty()) std::printf("  outputs in %s\n", report.config.out_dir.c_str());
        } else if (*table) {
            const auto rows = rdweno::run_table(family, {max_cells, out_dir});
            std::cout << rdweno::emit_table_csv(rows);
        } else if (*list) {
            for (const auto& name : rdweno::preset_names()) {
                std::printf("%-32s %s\n", name.c_str(), rdweno::preset_summary(name).c_str());
            }
        }
    } catch (const rdweno::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return 0;
}
