#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdweno/reactions.hpp"
#include "rdweno/stencil.hpp"

namespace rdweno {

/// Bad configuration document: unknown key, missing field, wrong type or invalid value.
/// The message starts with the offending key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key_path, const std::string& what)
        : std::runtime_error(key_path.empty() ? what : key_path + ": " + what), key_path_(key_path) {}

    [[nodiscard]] const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

inline constexpr double kDefaultCfl = 0.4;

struct RunConfig {
    std::optional<std::string> preset;
    ReactionModel model;
    double a = -1.0;
    double b = 5.0;
    int n_cells = 0;
    SchemeSpec scheme;
    double cfl = kDefaultCfl;
    double t_final = 0.0;
    std::vector<double> snapshots;
    /// Empty means no files are written.
    std::string out_dir;

    bool operator==(const RunConfig&) const = default;
};

/**
 * Parses a JSON config document:
 *
 *   { "preset": "fisher-convergence",
 *     "model": {"kind": "nws", "D": 1, "rho": 1e4, "alpha": 2, "beta": 0.2},
 *     "domain": {"a": -1, "b": 5}, "n_cells": 1200,
 *     "scheme": {"kind": "CWENO", "epsilon": 1e-40},
 *     "cfl": 0.4, "t_final": 0.02, "snapshots": [0.01], "out_dir": "out" }
 *
 * Fields given explicitly override the preset's. `overrides` are "key.path=value"
 * strings applied on top of the document; values are read as JSON, falling back
 * to a plain string.
 */
[[nodiscard]] RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Inverse of parse_config for a resolved config (no preset key, every field explicit).
[[nodiscard]] std::string dump_config(const RunConfig& config);

[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] bool has_preset(std::string_view name);
[[nodiscard]] RunConfig preset_config(std::string_view name);
[[nodiscard]] std::string preset_summary(std::string_view name);

/// Families accepted by run_table, in display order.
[[nodiscard]] std::vector<std::string> table_families();

/// Every run of a table family, ordered by scheme-then-N within each preset.
[[nodiscard]] std::vector<RunConfig> family_runs(std::string_view family);

}  // namespace rdweno
