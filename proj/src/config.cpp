#include "rdweno/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "rdweno/grid.hpp"

namespace rdweno {

using nlohmann::json;

namespace {

struct PresetEntry {
    std::string name;
    std::string summary;
    json doc;
};

json model_doc(ModelKind kind, double rho, double alpha = 1.0, double beta = 0.5) {
    json m{{"kind", std::string(to_string(kind))}, {"D", 1.0}, {"rho", rho}};
    if (kind == ModelKind::NWS) m["alpha"] = alpha;
    if (kind == ModelKind::Bistable) m["beta"] = beta;
    return m;
}

json run_doc(json model, double a, double b, int n_cells, SchemeKind scheme, double t_final, double cfl = kDefaultCfl) {
    return json{{"model", std::move(model)},
                {"domain", {{"a", a}, {"b", b}}},
                {"n_cells", n_cells},
                {"scheme", {{"kind", std::string(to_string(scheme))}}},
                {"cfl", cfl},
                {"t_final", t_final}};
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const std::vector<PresetEntry>& presets() {
    static const std::vector<PresetEntry> table = [] {
        std::vector<PresetEntry> p;
        // Convergence studies; n_cells is the coarsest level of each table.
        p.push_back({"fisher-convergence", "Fisher, rho=1e4, [-1,5], T=0.02",
                     run_doc(model_doc(ModelKind::Fisher, 1e4), -1, 5, 1200, SchemeKind::FD6, 0.02)});
        p.push_back({"zeldovich-convergence", "Zeldovich, rho=9000, [-1,5], T=0.06",
                     run_doc(model_doc(ModelKind::Zeldovich, 9000), -1, 5, 1200, SchemeKind::FD6, 0.06)});
        p.push_back({"nws-convergence", "Newell-Whitehead-Segel, rho=5000, alpha=2, [-1,5], T=0.028",
                     run_doc(model_doc(ModelKind::NWS, 5000, 2.0), -1, 5, 1200, SchemeKind::FD6, 0.028)});
        p.push_back({"bistable-convergence", "bistable, rho=1e4, beta=0.2, [-5,1], T=0.05",
                     run_doc(model_doc(ModelKind::Bistable, 1e4, 1.0, 0.2), -5, 1, 1200, SchemeKind::FD6, 0.05)});
        p.push_back({"lotka-volterra-convergence", "Lotka-Volterra, rho=7000, [-1,5], T=0.1",
                     run_doc(model_doc(ModelKind::LotkaVolterra, 7000), -1, 5, 1500, SchemeKind::FD6, 0.1)});

        // Stability comparison, all at rho=1e4 with the scheme that breaks down.
        p.push_back({"fisher-stability", "Fisher, rho=1e4, N=600, T=0.02",
                     run_doc(model_doc(ModelKind::Fisher, 1e4), -1, 5, 600, SchemeKind::WenoLsz, 0.02)});
        p.push_back({"zeldovich-stability", "Zeldovich, rho=1e4, N=600, T=0.06",
                     run_doc(model_doc(ModelKind::Zeldovich, 1e4), -1, 5, 600, SchemeKind::WenoLsz, 0.06)});
        p.push_back({"nws-stability", "Newell-Whitehead-Segel, rho=1e4, alpha=2, N=800, T=0.02",
                     run_doc(model_doc(ModelKind::NWS, 1e4, 2.0), -1, 5, 800, SchemeKind::WenoLsz, 0.02)});
        p.push_back({"bistable-stability", "bistable, rho=1e4, beta=0.2, [-5,1], N=600, T=0.02",
                     run_doc(model_doc(ModelKind::Bistable, 1e4, 1.0, 0.2), -5, 1, 600, SchemeKind::WenoLsz, 0.02)});
        p.push_back({"lotka-volterra-stability", "Lotka-Volterra, rho=1e4, N=900, T=0.11",
                     run_doc(model_doc(ModelKind::LotkaVolterra, 1e4), -1, 5, 900, SchemeKind::WenoLsz, 0.11)});

        // Front-speed study with CWENO at rho=1e4, T=0.02.
        p.push_back({"nws-speed", "Newell-Whitehead-Segel speed study, rho=1e4, alpha=2, N=1000, CWENO, T=0.02",
                     run_doc(model_doc(ModelKind::NWS, 1e4, 2.0), -1, 5, 1000, SchemeKind::Cweno, 0.02)});
        const std::vector<std::pair<int, std::vector<int>>> refinement{
            {1, {500, 1000, 2000}}, {2, {1000, 5000, 10000}}, {3, {1200, 6000, 12000}}, {4, {1200, 6000, 12000}}};
        for (const auto& [alpha, ns] : refinement) {
            for (int n : ns) {
                p.push_back({"nws-speed-a" + std::to_string(alpha) + "-n" + std::to_string(n),
                             "speed study alpha=" + std::to_string(alpha) + ", N=" + std::to_string(n) + ", CWENO",
                             run_doc(model_doc(ModelKind::NWS, 1e4, alpha), -1, 5, n, SchemeKind::Cweno, 0.02)});
            }
        }
        const std::vector<std::tuple<int, int, std::vector<double>>> cfl_rows{
            {2, 300, {0.18, 0.13, 0.08}}, {3, 240, {0.1, 0.076, 0.02}}, {4, 200, {0.06, 0.043, 0.01}}};
        for (const auto& [alpha, n, cfls] : cfl_rows) {
            for (double cfl : cfls) {
                p.push_back({"nws-cfl-a" + std::to_string(alpha) + "-n" + std::to_string(n) + "-cfl" + format_number(cfl),
                             "CFL study alpha=" + std::to_string(alpha) + ", N=" + std::to_string(n) +
                                 ", CFL=" + format_number(cfl) + ", CWENO",
                             run_doc(model_doc(ModelKind::NWS, 1e4, alpha), -1, 5, n, SchemeKind::Cweno, 0.02, cfl)});
            }
        }
        return p;
    }();
    return table;
}

const PresetEntry* find_preset(std::string_view name) {
    const auto& all = presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const PresetEntry& e) { return e.name == name; });
    return it == all.end() ? nullptr : &*it;
}

std::string join_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(join_path(path, key), "unknown key");
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    const auto full = join_path(path, key);
    if (!parent.contains(key)) throw ConfigError(full, "missing required field");
    const json& v = parent.at(key);
    if (!v.is_object()) throw ConfigError(full, "type mismatch, expected an object");
    return v;
}

double read_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "type mismatch, expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

double number_field(const json& parent, const std::string& key, const std::string& path,
                    std::optional<double> fallback = std::nullopt) {
    const auto full = join_path(path, key);
    if (!parent.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(full, "missing required field");
    }
    return read_number(parent.at(key), full);
}

std::string string_field(const json& parent, const std::string& key, const std::string& path) {
    const auto full = join_path(path, key);
    if (!parent.contains(key)) throw ConfigError(full, "missing required field");
    const json& v = parent.at(key);
    if (!v.is_string()) throw ConfigError(full, "type mismatch, expected a string");
    return v.get<std::string>();
}

/// Runs `f`, rewrapping argument errors from the domain layer as ConfigError at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

RunConfig from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config document must be an object");
    reject_unknown(doc, "", {"preset", "model", "domain", "n_cells", "scheme", "cfl", "t_final", "snapshots", "out_dir"});

    RunConfig cfg;
    if (doc.contains("preset")) cfg.preset = string_field(doc, "preset", "");

    const json& m = require_object(doc, "model", "");
    reject_unknown(m, "model", {"kind", "D", "rho", "alpha", "beta"});
    const auto kind_name = string_field(m, "kind", "model");
    cfg.model.kind = at_path("model.kind", [&] { return model_from_string(kind_name); });
    cfg.model.D = number_field(m, "D", "model", 1.0);
    cfg.model.rho = number_field(m, "rho", "model");
    const bool needs_alpha = cfg.model.kind == ModelKind::NWS;
    const bool needs_beta = cfg.model.kind == ModelKind::Bistable;
    cfg.model.alpha = number_field(m, "alpha", "model", needs_alpha ? std::nullopt : std::optional<double>(1.0));
    cfg.model.beta = number_field(m, "beta", "model", needs_beta ? std::nullopt : std::optional<double>(0.5));
    at_path("model", [&] {
        cfg.model.validate();
        return 0;
    });

    const json& d = require_object(doc, "domain", "");
    reject_unknown(d, "domain", {"a", "b"});
    cfg.a = number_field(d, "a", "domain");
    cfg.b = number_field(d, "b", "domain");

    if (!doc.contains("n_cells")) throw ConfigError("n_cells", "missing required field");
    const json& n = doc.at("n_cells");
    if (!n.is_number_integer()) throw ConfigError("n_cells", "type mismatch, expected an integer");
    const auto n_value = n.get<std::int64_t>();
    if (n_value < kMinCells) {
        throw ConfigError("n_cells", "must be at least " + std::to_string(kMinCells) +
                                         " so the six-point stencil fits, got " + std::to_string(n_value));
    }
    if (n_value > 100'000'000) throw ConfigError("n_cells", "too large");
    cfg.n_cells = static_cast<int>(n_value);
    at_path("domain", [&] { return make_grid(cfg.a, cfg.b, cfg.n_cells); });

    const json& s = require_object(doc, "scheme", "");
    reject_unknown(s, "scheme", {"kind", "epsilon"});
    const auto scheme_name = string_field(s, "kind", "scheme");
    cfg.scheme.kind = at_path("scheme.kind", [&] { return scheme_from_string(scheme_name); });
    cfg.scheme.epsilon = number_field(s, "epsilon", "scheme", default_epsilon(cfg.scheme.kind));
    at_path("scheme", [&] {
        cfg.scheme.validate();
        return 0;
    });

    cfg.cfl = number_field(doc, "cfl", "", kDefaultCfl);
    if (!(cfg.cfl > 0.0)) throw ConfigError("cfl", "must be positive");
    cfg.t_final = number_field(doc, "t_final", "");
    if (cfg.t_final < 0.0) throw ConfigError("t_final", "must be non-negative");

    if (doc.contains("snapshots")) {
        const json& snaps = doc.at("snapshots");
        if (!snaps.is_array()) throw ConfigError("snapshots", "type mismatch, expected an array of times");
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            const auto path = "snapshots[" + std::to_string(k) + "]";
            const double t = read_number(snaps[k], path);
            if (t < 0.0 || t > cfg.t_final) throw ConfigError(path, "snapshot time must lie in [0, t_final]");
            cfg.snapshots.push_back(t);
        }
        std::sort(cfg.snapshots.begin(), cfg.snapshots.end());
    }

    if (doc.contains("out_dir")) cfg.out_dir = string_field(doc, "out_dir", "");
    return cfg;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("", "override '" + assignment + "' is not of the form key.path=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError(path, "empty component in override key");
        if (!node->is_object()) throw ConfigError(path.substr(0, start ? start - 1 : 0), "cannot descend into a non-object");
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        if (node->is_null()) *node = json::object();
        start = dot + 1;
    }
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "config document must be an object");
    for (const auto& o : overrides) apply_override(doc, o);

    json resolved = doc;
    if (doc.contains("preset")) {
        if (!doc.at("preset").is_string()) throw ConfigError("preset", "type mismatch, expected a string");
        const auto name = doc.at("preset").get<std::string>();
        const PresetEntry* entry = find_preset(name);
        if (!entry) throw ConfigError("preset", "unknown preset '" + name + "'");
        resolved = entry->doc;
        // A scheme change without an explicit epsilon must pick up the new scheme's default.
        resolved.merge_patch(doc);
    }
    return from_json(resolved);
}

std::string dump_config(const RunConfig& c) {
    json doc{{"model",
              {{"kind", std::string(to_string(c.model.kind))},
               {"D", c.model.D},
               {"rho", c.model.rho},
               {"alpha", c.model.alpha},
               {"beta", c.model.beta}}},
             {"domain", {{"a", c.a}, {"b", c.b}}},
             {"n_cells", c.n_cells},
             {"scheme", {{"kind", std::string(to_string(c.scheme.kind))}, {"epsilon", c.scheme.epsilon}}},
             {"cfl", c.cfl},
             {"t_final", c.t_final},
             {"snapshots", c.snapshots},
             {"out_dir", c.out_dir}};
    if (c.preset) doc["preset"] = *c.preset;
    return doc.dump(2);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : presets()) out.push_back(p.name);
    return out;
}

bool has_preset(std::string_view name) { return find_preset(name) != nullptr; }

RunConfig preset_config(std::string_view name) {
    const PresetEntry* entry = find_preset(name);
    if (!entry) throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    RunConfig cfg = from_json(entry->doc);
    cfg.preset = std::string(name);
    return cfg;
}

std::string preset_summary(std::string_view name) {
    const PresetEntry* entry = find_preset(name);
    if (!entry) throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    return entry->summary;
}

std::vector<std::string> table_families() {
    return {"fisher", "zeldovich", "nws", "bistable", "lotka-volterra", "stability", "nws-speed", "nws-cfl"};
}

std::vector<RunConfig> family_runs(std::string_view family) {
    auto refine = [](std::string_view preset, std::vector<int> ns) {
        std::vector<RunConfig> out;
        for (SchemeKind k : kAllSchemes) {
            for (int n : ns) {
                RunConfig cfg = preset_config(preset);
                cfg.n_cells = n;
                cfg.scheme = SchemeSpec::with_default_epsilon(k);
                out.push_back(cfg);
            }
        }
        return out;
    };
    auto by_prefix = [](std::string_view prefix) {
        std::vector<RunConfig> out;
        for (const auto& p : presets()) {
            if (p.name.rfind(prefix, 0) == 0) out.push_back(preset_config(p.name));
        }
        return out;
    };

    const std::vector<int> standard{1200, 2400, 4800, 9600};
    if (family == "fisher") return refine("fisher-convergence", standard);
    if (family == "zeldovich") return refine("zeldovich-convergence", standard);
    if (family == "nws") return refine("nws-convergence", standard);
    if (family == "bistable") return refine("bistable-convergence", standard);
    if (family == "lotka-volterra") return refine("lotka-volterra-convergence", {1500, 3000, 6000});
    if (family == "stability") {
        std::vector<RunConfig> out;
        for (const char* name : {"fisher-stability", "zeldovich-stability", "nws-stability", "bistable-stability",
                                 "lotka-volterra-stability"}) {
            for (SchemeKind k : kAllSchemes) {
                RunConfig cfg = preset_config(name);
                cfg.scheme = SchemeSpec::with_default_epsilon(k);
                out.push_back(cfg);
            }
        }
        return out;
    }
    if (family == "nws-speed") return by_prefix("nws-speed-a");
    if (family == "nws-cfl") return by_prefix("nws-cfl-a");
    throw ConfigError("family", "unknown table family '" + std::string(family) + "'");
}

}  // namespace rdweno
