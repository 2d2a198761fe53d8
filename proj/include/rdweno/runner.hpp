#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdweno/config.hpp"
#include "rdweno/diagnostics.hpp"
#include "rdweno/integrator.hpp"

namespace rdweno {

/// Front samples are taken every this many steps.
inline constexpr int kFrontStride = 10;

struct RunReport {
    RunConfig config;
    RunStatus status = RunStatus::Ok;
    double blowup_time = std::numeric_limits<double>::quiet_NaN();
    /// Time of the returned state: t_final on success, the failing step's end time on blow-up.
    double t_reached = 0.0;
    std::int64_t steps = 0;
    /// Absent for BLOWUP runs.
    std::optional<std::vector<ErrorNorms>> norms;
    FrontTrack front;
    std::optional<double> front_speed;
    double wall_seconds = 0.0;
    StateField final_state;
};

/// Integrates the config from its exact initial profile. Writes report.csv, front.csv,
/// final.csv, one CSV per snapshot and plot.gp into config.out_dir when it is non-empty.
[[nodiscard]] RunReport run(const RunConfig& config);

/// The fields of a report that are serialized to report.csv. Wall time is left
/// out so identical configs produce identical bytes.
struct ReportRow {
    std::string preset;
    std::string model;
    double D = 0.0;
    double rho = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 0.0;
    int n_cells = 0;
    std::string scheme;
    double epsilon = 0.0;
    double cfl = 0.0;
    double t_final = 0.0;
    std::string status;
    std::optional<double> blowup_time;
    double t_reached = 0.0;
    std::int64_t steps = 0;
    int species = 0;
    std::optional<double> l1;
    std::optional<double> l2;
    std::optional<double> linf;
    std::optional<double> front_speed;

    bool operator==(const ReportRow&) const = default;
};

[[nodiscard]] std::vector<ReportRow> report_rows(const RunReport& report);
/// Header plus one row per species; absent values are empty cells, floats use 17 significant digits.
[[nodiscard]] std::string emit_report_csv(const std::vector<ReportRow>& rows);
[[nodiscard]] std::vector<ReportRow> parse_report_csv(std::string_view text);

/// Columns x, u[, v], exact_u[, exact_v] with 17 significant digits.
[[nodiscard]] std::string emit_snapshot_csv(const Grid& grid, const StateField& state, const StateField& exact);
/// Columns t, x, speed (trailing least-squares speed up to each sample).
[[nodiscard]] std::string emit_front_csv(const FrontTrack& track);
[[nodiscard]] std::string emit_plot_script(const RunReport& report, const std::vector<std::string>& snapshot_files);

struct TableRow {
    std::string family;
    std::string preset;
    std::string model;
    std::string scheme;
    int n_cells = 0;
    double cfl = 0.0;
    double t_final = 0.0;
    int species = 0;
    std::string status;
    std::optional<double> blowup_time;
    std::int64_t steps = 0;
    std::optional<double> l1;
    std::optional<double> l2;
    std::optional<double> linf;
    /// L1 order against the previous N for the same preset, scheme and species.
    std::optional<double> order_l1;
    std::optional<double> front_speed;
    double exact_speed = 0.0;
};

struct TableOptions {
    /// Rows whose n_cells exceed this are skipped; 0 means no limit.
    int max_cells = 0;
    /// Written to <out_dir>/<family>.csv when non-empty.
    std::string out_dir;
};

[[nodiscard]] std::vector<TableRow> run_table(std::string_view family, const TableOptions& options = {});
/// Stable schema; errors and speeds use 6 significant digits in scientific notation.
[[nodiscard]] std::string emit_table_csv(const std::vector<TableRow>& rows);

}  // namespace rdweno
