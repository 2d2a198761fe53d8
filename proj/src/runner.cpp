#include "rdweno/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rdweno {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string sci(double v) { return fmt("%.6e", v); }

std::string opt(const std::optional<double>& v, std::string (*f)(double)) { return v ? f(*v) : std::string(); }

std::string_view status_name(RunStatus s) { return s == RunStatus::Ok ? "OK" : "BLOWUP"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters in number '" + s + "'");
    return v;
}

std::optional<double> to_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return to_double(s);
}

constexpr std::string_view kReportHeader =
    "preset,model,D,rho,alpha,beta,a,b,n_cells,scheme,epsilon,cfl,t_final,status,blowup_time,t_reached,steps,"
    "species,l1,l2,linf,front_speed";

constexpr std::string_view kTableHeader =
    "family,preset,model,scheme,n_cells,cfl,t_final,species,status,blowup_time,steps,l1,l2,linf,order_l1,"
    "front_speed,exact_speed";

std::string snapshot_name(std::size_t k, double t) { return "snapshot_" + std::to_string(k) + "_t" + fmt("%.6g", t) + ".csv"; }

}  // namespace

RunReport run(const RunConfig& config) {
    const Grid grid = make_grid(config.a, config.b, config.n_cells);
    const BoundarySpec bc = equilibrium_limits(config.model);
    const StateField u0 = apply_dirichlet(sample_exact(config.model, grid, 0.0), bc);
    SemiDiscreteSystem system(grid, bc, config.scheme, config.model);

    FrontTracker tracker(grid, front_level(config.model), 0, kFrontStride);
    tracker.observe(0, 0.0, u0);

    std::vector<std::pair<double, StateField>> captured;
    std::size_t next_snapshot = 0;
    auto capture = [&](double t, const StateField& u) {
        while (next_snapshot < config.snapshots.size() && t >= config.snapshots[next_snapshot] - 1e-12 * config.t_final) {
            captured.emplace_back(t, u);
            ++next_snapshot;
        }
    };
    capture(0.0, u0);

    std::vector<StepObserver> observers{
        [&](std::int64_t step, double t, const StateField& u) { tracker.observe(step, t, u); },
        [&](std::int64_t, double t, const StateField& u) { capture(t, u); },
    };

    const auto start = std::chrono::steady_clock::now();
    StepOutcome outcome = advance(u0, TimeSpec{config.cfl, config.t_final}, system, observers);
    const auto stop = std::chrono::steady_clock::now();

    RunReport report;
    report.config = config;
    report.status = outcome.status;
    report.blowup_time = outcome.blowup_time;
    report.t_reached = outcome.t;
    report.steps = outcome.steps;
    report.front = tracker.track();
    report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    if (outcome.status == RunStatus::Ok) {
        report.norms = error_norms(outcome.state, sample_exact(config.model, grid, config.t_final), grid.dx);
        if (report.front.samples.size() >= 3) {
            report.front_speed = front_speed(report.front, trailing_window(report.front));
        }
    }
    report.final_state = std::move(outcome.state);

    if (!config.out_dir.empty()) {
        const std::filesystem::path dir(config.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "report.csv", emit_report_csv(report_rows(report)));
        write_file(dir / "front.csv", emit_front_csv(report.front));
        std::vector<std::string> names;
        for (std::size_t k = 0; k < captured.size(); ++k) {
            const auto& [t, state] = captured[k];
            names.push_back(snapshot_name(k, t));
            write_file(dir / names.back(), emit_snapshot_csv(grid, state, sample_exact(config.model, grid, t)));
        }
        write_file(dir / "final.csv",
                   emit_snapshot_csv(grid, report.final_state, sample_exact(config.model, grid, report.t_reached)));
        write_file(dir / "plot.gp", emit_plot_script(report, names));
    }
    return report;
}

std::vector<ReportRow> report_rows(const RunReport& r) {
    std::vector<ReportRow> rows;
    const auto& c = r.config;
    for (int s = 0; s < c.model.species_count(); ++s) {
        ReportRow row;
        row.preset = c.preset.value_or("");
        row.model = std::string(to_string(c.model.kind));
        row.D = c.model.D;
        row.rho = c.model.rho;
        row.alpha = c.model.alpha;
        row.beta = c.model.beta;
        row.a = c.a;
        row.b = c.b;
        row.n_cells = c.n_cells;
        row.scheme = std::string(to_string(c.scheme.kind));
        row.epsilon = c.scheme.epsilon;
        row.cfl = c.cfl;
        row.t_final = c.t_final;
        row.status = std::string(status_name(r.status));
        if (r.status == RunStatus::Blowup) row.blowup_time = r.blowup_time;
        row.t_reached = r.t_reached;
        row.steps = r.steps;
        row.species = s;
        if (r.norms) {
            const auto& n = r.norms->at(static_cast<std::size_t>(s));
            row.l1 = n.l1;
            row.l2 = n.l2;
            row.linf = n.linf;
        }
        row.front_speed = r.front_speed;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string emit_report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << kReportHeader << '\n';
    for (const auto& r : rows) {
        out << r.preset << ',' << r.model << ',' << full(r.D) << ',' << full(r.rho) << ',' << full(r.alpha) << ','
            << full(r.beta) << ',' << full(r.a) << ',' << full(r.b) << ',' << r.n_cells << ',' << r.scheme << ','
            << full(r.epsilon) << ',' << full(r.cfl) << ',' << full(r.t_final) << ',' << r.status << ','
            << opt(r.blowup_time, full) << ',' << full(r.t_reached) << ',' << r.steps << ',' << r.species << ','
            << opt(r.l1, full) << ',' << opt(r.l2, full) << ',' << opt(r.linf, full) << ','
            << opt(r.front_speed, full) << '\n';
    }
    return out.str();
}

std::vector<ReportRow> parse_report_csv(std::string_view text) {
    std::vector<std::string> lines;
    for (auto& line : split(text, '\n')) {
        if (!line.empty()) lines.push_back(std::move(line));
    }
    if (lines.empty() || lines.front() != kReportHeader) throw std::invalid_argument("report CSV: missing or unexpected header");
    std::vector<ReportRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split(lines[k], ',');
        if (f.size() != 22) throw std::invalid_argument("report CSV: row " + std::to_string(k) + " has " + std::to_string(f.size()) + " fields");
        ReportRow r;
        r.preset = f[0];
        r.model = f[1];
        r.D = to_double(f[2]);
        r.rho = to_double(f[3]);
        r.alpha = to_double(f[4]);
        r.beta = to_double(f[5]);
        r.a = to_double(f[6]);
        r.b = to_double(f[7]);
        r.n_cells = std::stoi(f[8]);
        r.scheme = f[9];
        r.epsilon = to_double(f[10]);
        r.cfl = to_double(f[11]);
        r.t_final = to_double(f[12]);
        r.status = f[13];
        r.blowup_time = to_opt(f[14]);
        r.t_reached = to_double(f[15]);
        r.steps = std::stoll(f[16]);
        r.species = std::stoi(f[17]);
        r.l1 = to_opt(f[18]);
        r.l2 = to_opt(f[19]);
        r.linf = to_opt(f[20]);
        r.front_speed = to_opt(f[21]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string emit_snapshot_csv(const Grid& grid, const StateField& state, const StateField& exact) {
    check_shape(state, grid);
    check_shape(exact, grid);
    static constexpr const char* names[] = {"u", "v"};
    const int species = state.species_count();
    std::ostringstream out;
    out << 'x';
    for (int s = 0; s < species; ++s) out << ',' << names[s];
    for (int s = 0; s < species; ++s) out << ",exact_" << names[s];
    out << '\n';
    for (int i = 0; i < grid.n_points(); ++i) {
        out << full(grid.x(i));
        for (int s = 0; s < species; ++s) out << ',' << full(state(s, i));
        for (int s = 0; s < species; ++s) out << ',' << full(exact(s, i));
        out << '\n';
    }
    return out.str();
}

std::string emit_front_csv(const FrontTrack& track) {
    std::ostringstream out;
    out << "t,x,speed\n";
    const auto speeds = speed_series(track);
    for (std::size_t k = 0; k < track.samples.size(); ++k) {
        out << full(track.samples[k].t) << ',' << full(track.samples[k].x) << ',';
        if (k > 0) out << full(speeds[k - 1].x);
        out << '\n';
    }
    return out.str();
}

std::string emit_plot_script(const RunReport& report, const std::vector<std::string>& snapshot_files) {
    const auto& c = report.config;
    const bool two = c.model.species_count() == 2;
    std::ostringstream out;
    out << "# gnuplot script; run with: gnuplot plot.gp\n"
        << "set datafile separator ','\n"
        << "set terminal pngcairo size 1000,700\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 'x'\n\n"
        << "set output 'profiles.png'\n"
        << "set title '" << to_string(c.model.kind) << ", " << to_string(c.scheme.kind) << ", N=" << c.n_cells
        << ", CFL=" << fmt("%g", c.cfl) << ", t=" << fmt("%g", report.t_reached) << "'\n"
        << "plot 'final.csv' using 1:2 with lines title 'u'";
    if (two) out << ", 'final.csv' using 1:3 with lines title 'v'";
    const int exact_col = two ? 4 : 3;
    out << ", 'final.csv' using 1:" << exact_col << " with lines dashtype 2 title 'exact u'";
    if (two) out << ", 'final.csv' using 1:5 with lines dashtype 2 title 'exact v'";
    out << "\n";
    if (!snapshot_files.empty()) {
        out << "\nset output 'snapshots.png'\nset title 'snapshots'\nplot ";
        for (std::size_t k = 0; k < snapshot_files.size(); ++k) {
            if (k) out << ", ";
            out << "'" << snapshot_files[k] << "' using 1:2 with lines title '" << snapshot_files[k] << "'";
        }
        out << "\n";
    }
    out << "\nset output 'front_speed.png'\nset title 'front speed (exact " << fmt("%g", exact_speed(c.model))
        << ")'\nset xlabel 't'\nplot 'front.csv' using 1:3 with lines title 'numerical', " << full(exact_speed(c.model))
        << " dashtype 2 title 'exact'\n";
    return out.str();
}

std::vector<TableRow> run_table(std::string_view family, const TableOptions& options) {
    const auto configs = family_runs(family);
    std::vector<TableRow> rows;
    for (const auto& cfg : configs) {
        if (options.max_cells > 0 && cfg.n_cells > options.max_cells) continue;
        const RunReport report = run(cfg);
        for (const auto& r : report_rows(report)) {
            TableRow row;
            row.family = std::string(family);
            row.preset = r.preset;
            row.model = r.model;
            row.scheme = r.scheme;
            row.n_cells = r.n_cells;
            row.cfl = r.cfl;
            row.t_final = r.t_final;
            row.species = r.species;
            row.status = r.status;
            row.blowup_time = r.blowup_time;
            row.steps = r.steps;
            row.l1 = r.l1;
            row.l2 = r.l2;
            row.linf = r.linf;
            row.front_speed = r.front_speed;
            row.exact_speed = exact_speed(cfg.model);
            for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
                if (it->preset != row.preset || it->scheme != row.scheme || it->species != row.species ||
                    it->cfl != row.cfl || it->n_cells >= row.n_cells) {
                    continue;
                }
                if (it->l1 && row.l1 && *it->l1 > 0.0 && *row.l1 > 0.0) {
                    row.order_l1 = convergence_order({{it->n_cells, *it->l1}, {row.n_cells, *row.l1}}).front();
                }
                break;
            }
            rows.push_back(std::move(row));
        }
    }
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        write_file(std::filesystem::path(options.out_dir) / (std::string(family) + ".csv"), emit_table_csv(rows));
    }
    return rows;
}

std::string emit_table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << kTableHeader << '\n';
    auto plain = [](double v) { return fmt("%g", v); };
    for (const auto& r : rows) {
        out << r.family << ',' << r.preset << ',' << r.model << ',' << r.scheme << ',' << r.n_cells << ','
            << plain(r.cfl) << ',' << plain(r.t_final) << ',' << r.species << ',' << r.status << ','
            << opt(r.blowup_time, sci) << ',' << r.steps << ',' << opt(r.l1, sci) << ',' << opt(r.l2, sci) << ','
            << opt(r.linf, sci) << ',' << (r.order_l1 ? fmt("%.2f", *r.order_l1) : std::string()) << ','
            << opt(r.front_speed, sci) << ',' << sci(r.exact_speed) << '\n';
    }
    return out.str();
}

}  // namespace rdweno
