#include "commbound/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commbound/errors.hpp"

namespace commbound {

namespace {

constexpr const char* kValidateSchema = "commbound.validate/1";
constexpr const char* kViolationSchema = "commbound.violation/1";
constexpr const char* kProbeSchema = "commbound.probe/1";

struct Grid {
    double lo;
    double hi;
    int steps;
};

Grid resolve_grid(const RunConfig& c, double lo, double hi, int steps) {
    return {c.delta_min.value_or(lo), c.delta_max.value_or(hi), c.steps.value_or(steps)};
}

void check_grid(const Grid& g, bool positive_setting) {
    if (g.steps < 2) throw DomainError("--steps must be at least 2");
    if (!(g.lo < g.hi)) throw DomainError("--delta-min must be below --delta-max");
    if (positive_setting) {
        if (!(g.lo > 0.0) || g.hi > 1.0) throw DomainError("square-root curves live on delta in (0, 1]");
    } else {
        if (g.lo < 0.0 || !(g.hi < 2.0)) throw DomainError("circle curves live on delta in [0, 2)");
    }
}

std::string csv_line(std::initializer_list<std::string> fields) {
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += f;
        first = false;
    }
    out += '\n';
    return out;
}

nlohmann::json segments_json(const BoundCurve& curve) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : curve.breakpoints())
        out.push_back({{"delta_start", s.delta_start},
                       {"delta_end", s.delta_end},
                       {"m", s.line.slope},
                       {"b", s.line.intercept},
                       {"provenance", s.line.provenance.label()}});
    return out;
}

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

nlohmann::json record_json(const SampleRecord& r) {
    return {{"seed", r.seed}, {"dim", r.dim},       {"delta", r.delta},
            {"measured", r.measured}, {"bound", r.bound}, {"margin", r.margin}};
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 2) throw DomainError("grid needs at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / (steps - 1);
        out[static_cast<std::size_t>(k)] = k + 1 == steps ? hi : lo + (hi - lo) * t;
    }
    return out;
}

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12e", v);
    return buffer;
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw DomainError("unknown format '" + text + "' (expected csv or json)");
}

std::pair<int, int> parse_dims(const std::string& text) {
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            const int d = std::stoi(text);
            return {d, d};
        }
        return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
    } catch (const std::exception&) {
        throw DomainError("--dims expects N or MIN-MAX, got '" + text + "'");
    }
}

void apply_config_json(RunConfig& c, const nlohmann::json& doc, const std::set<std::string>& given) {
    if (!doc.is_object()) throw DomainError("config file must hold a JSON object");
    auto take = [&](const char* key) { return doc.contains(key) && !given.count(key); };
    try {
        if (take("function")) c.function = doc["function"].get<std::string>();
        if (take("delta-min")) c.delta_min = doc["delta-min"].get<double>();
        if (take("delta-max")) c.delta_max = doc["delta-max"].get<double>();
        if (take("steps")) c.steps = doc["steps"].get<int>();
        if (take("delta")) c.delta = doc["delta"].get<double>();
        if (take("n-max")) c.n_max = doc["n-max"].get<int>();
        if (take("a-grid")) c.a_grid = doc["a-grid"].get<int>();
        if (take("samples")) c.samples = doc["samples"].get<std::size_t>();
        if (take("dims")) std::tie(c.dim_min, c.dim_max) = parse_dims(doc["dims"].get<std::string>());
        if (take("seed")) c.seed = doc["seed"].get<std::uint64_t>();
        if (take("iters")) c.iterations = doc["iters"].get<int>();
        if (take("out")) c.out = doc["out"].get<std::string>();
        if (take("format")) c.format = parse_format(doc["format"].get<std::string>());
        if (take("pedersen-only")) c.pedersen_only = doc["pedersen-only"].get<bool>();
        if (take("spectrum-mode")) c.spectrum_mode = parse_spectrum_mode(doc["spectrum-mode"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config file: ") + e.what());
    }
}

PeriodicFunction select_periodic_function(const std::string& selector) {
    if (selector == "triangle") return builtin_triangle();
    if (selector == "bump") return builtin_bump();
    if (selector == "cos") return builtin_cos();
    if (selector == "sqrt") throw DomainError("sqrt is a function on [0, 1], not on the circle");
    return from_coefficients(load_coefficient_file(selector), std::filesystem::path(selector).filename().string());
}

CommandOutput cmd_curve_sqrt(const RunConfig& c) {
    const Grid g = resolve_grid(c, 1e-3, 1.0, 1000);
    check_grid(g, true);
    const int n_max = c.n_max.value_or(kDefaultPedersenMax);
    const BoundCurve curve = c.pedersen_only ? pedersen_envelope(n_max) : gamma0(n_max, c.a_grid);

    CommandOutput out;
    if (format_or(c, Format::csv) == Format::json) {
        out.text = segments_json(curve).dump(2) + "\n";
    } else {
        out.text = csv_line({"delta", c.pedersen_only ? "pedersen" : "gamma0", "sqrt_delta", "ratio"});
        for (double d : linear_grid(g.lo, g.hi, g.steps)) {
            const double bound = curve(d);
            const double root = std::sqrt(d);
            out.text += csv_line({format_double(d), format_double(bound), format_double(root), format_double(bound / root)});
        }
    }
    out.summary = std::string(c.pedersen_only ? "pedersen" : "gamma0") + " curve with " +
                  std::to_string(curve.lines().size()) + " lines";
    return out;
}

CommandOutput cmd_curve_circle(const RunConfig& c) {
    const Grid g = resolve_grid(c, 0.0, 1.999, 500);
    check_grid(g, false);
    const auto f = select_periodic_function(c.function);
    const auto upper = truncation_envelope(f, c.n_max.value_or(kDefaultCircleNMax));

    CommandOutput out;
    if (format_or(c, Format::csv) == Format::json) {
        out.text = segments_json(upper).dump(2) + "\n";
    } else {
        const auto deltas = linear_grid(g.lo, g.hi, g.steps);
        const auto lower = eta_lower_curve(f, deltas);
        out.text = csv_line({"delta", "upper", "lower", "active_line_provenance"});
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const auto point = upper.evaluate(deltas[k]);
            out.text += csv_line({format_double(deltas[k]), format_double(point.value), format_double(lower[k].value),
                                  point.provenance.label()});
        }
    }
    out.summary = "circle curve for " + f.name;
    return out;
}

CommandOutput cmd_lower_circle(const RunConfig& c) {
    const Grid g = resolve_grid(c, 0.0, 1.999, 500);
    check_grid(g, false);
    const auto f = select_periodic_function(c.function);
    const auto deltas = linear_grid(g.lo, g.hi, g.steps);
    const auto lower = eta_lower_curve(f, deltas);

    CommandOutput out;
    if (format_or(c, Format::csv) == Format::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (std::size_t k = 0; k < deltas.size(); ++k)
            doc.push_back({{"delta", deltas[k]}, {"lower", lower[k].value}, {"x1", lower[k].x1}, {"x2", lower[k].x2}});
        out.text = doc.dump(2) + "\n";
    } else {
        out.text = csv_line({"delta", "lower", "x1", "x2"});
        for (std::size_t k = 0; k < deltas.size(); ++k)
            out.text += csv_line({format_double(deltas[k]), format_double(lower[k].value), format_double(lower[k].x1),
                                  format_double(lower[k].x2)});
    }
    out.summary = "lower curve for " + f.name;
    return out;
}

CommandOutput cmd_validate(const RunConfig& c) {
    const bool sqrt_mode = c.command == "validate sqrt";
    if (!sqrt_mode && c.command != "validate circle") throw DomainError("validate expects sqrt or circle");

    SweepConfig sweep;
    sweep.count = c.samples.value_or(sqrt_mode ? 2000 : 1000);
    sweep.dim_min = c.dim_min;
    sweep.dim_max = c.dim_max;
    sweep.seed = c.seed;
    sweep.spectrum_mode = c.spectrum_mode;

    nlohmann::json report = {{"schema", kValidateSchema},
                             {"command", c.command},
                             {"samples", sweep.count},
                             {"dims", {sweep.dim_min, sweep.dim_max}},
                             {"seed", sweep.seed},
                             {"tolerance", sweep.tolerance}};
    CommandOutput out;
    try {
        SweepResult result;
        if (sqrt_mode) {
            const int n_max = c.n_max.value_or(kDefaultPedersenMax);
            report["function"] = "sqrt";
            report["n_max"] = n_max;
            report["a_grid"] = c.a_grid;
            report["spectrum_mode"] = c.spectrum_mode ? to_string(*c.spectrum_mode) : "both";
            result = sweep_positive(sqrt_function(), gamma0(n_max, c.a_grid), sweep);
        } else {
            const auto f = select_periodic_function(c.function);
            const int n_max = c.n_max.value_or(kDefaultCircleNMax);
            report["function"] = f.name;
            report["n_max"] = n_max;
            result = sweep_unitary(f, truncation_envelope(f, n_max), sweep);
        }
        double max_delta = 0.0;
        for (const auto& r : result.records) max_delta = std::max(max_delta, r.delta);
        report["violations"] = 0;
        report["min_margin"] = result.min_margin;
        report["min_margin_seed"] = result.min_margin_seed;
        report["max_delta"] = max_delta;

        if (format_or(c, Format::json) == Format::csv) {
            out.text = csv_line({"seed", "dim", "delta", "measured", "bound", "margin"});
            for (const auto& r : result.records)
                out.text += csv_line({std::to_string(r.seed), std::to_string(r.dim), format_double(r.delta),
                                      format_double(r.measured), format_double(r.bound), format_double(r.margin)});
        } else {
            out.text = report.dump(2) + "\n";
        }
        out.summary = "0 violations in " + std::to_string(sweep.count) + " samples; min margin " +
                      format_double(result.min_margin) + " (seed " + std::to_string(result.min_margin_seed) + ")";
    } catch (const BoundViolation& v) {
        const auto& inst = v.instance();
        nlohmann::json doc = {{"schema", kViolationSchema},
                              {"command", c.command},
                              {"sweep_seed", c.seed},
                              {"record", record_json(v.record())},
                              {"role", inst.role == Role::unitary ? "unitary" : "positive-contraction"},
                              {"x", matrix_json(inst.x)},
                              {"a", matrix_json(inst.a)}};
        out.text = doc.dump(2) + "\n";
        out.exit_code = 1;
        out.summary = v.what();
    }
    return out;
}

CommandOutput cmd_probe(const RunConfig& c) {
    std::vector<double> targets;
    if (c.delta) {
        targets = {*c.delta};
    } else if (c.delta_min || c.delta_max || c.steps) {
        const Grid g = resolve_grid(c, 0.01, 1.0, 10);
        check_grid(g, true);
        targets = linear_grid(g.lo, g.hi, g.steps);
    } else {
        targets = {0.25};
    }
    const BoundCurve envelope = gamma0(c.n_max.value_or(kDefaultPedersenMax), c.a_grid);

    struct Row {
        double target;
        ProbeResult result;
        double gamma;
    };
    std::vector<Row> rows;
    for (double t : targets) {
        ProbeConfig pc;
        pc.delta_target = t;
        pc.dim = c.dim_min;
        pc.iterations = c.iterations;
        pc.seed = c.seed;
        rows.push_back({t, probe_max_commutator(pc), envelope(t)});
    }

    CommandOutput out;
    if (format_or(c, Format::csv) == Format::json) {
        nlohmann::json doc = {{"schema", kProbeSchema}, {"seed", c.seed}, {"iterations", c.iterations}};
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows)
            doc["rows"].push_back({{"delta_target", r.target},
                                   {"dim", r.result.best.dim},
                                   {"best_measured", r.result.best.measured},
                                   {"best_delta", r.result.best.delta},
                                   {"sqrt_delta", std::sqrt(r.target)},
                                   {"gamma0", r.gamma},
                                   {"gap_sqrt", std::sqrt(r.target) - r.result.best.measured},
                                   {"gap_gamma0", r.gamma - r.result.best.measured},
                                   {"best_restart", r.result.best_restart},
                                   {"stagnations", r.result.stagnations},
                                   {"h", matrix_json(r.result.h)},
                                   {"a", matrix_json(r.result.a)}});
        out.text = doc.dump(2) + "\n";
    } else {
        out.text = csv_line({"delta_target", "dim", "best_measured", "sqrt_delta", "gamma0", "gap_sqrt", "gap_gamma0",
                             "best_seed", "iterations", "stagnations"});
        for (const auto& r : rows)
            out.text += csv_line({format_double(r.target), std::to_string(r.result.best.dim),
                                  format_double(r.result.best.measured), format_double(std::sqrt(r.target)),
                                  format_double(r.gamma), format_double(std::sqrt(r.target) - r.result.best.measured),
                                  format_double(r.gamma - r.result.best.measured), std::to_string(r.result.best.seed),
                                  std::to_string(r.result.iterations), std::to_string(r.result.stagnations)});
    }
    out.summary = "probed " + std::to_string(rows.size()) + " target(s)";
    return out;
}

CommandOutput run_command(const RunConfig& c) {
    if (c.command == "curve sqrt") return cmd_curve_sqrt(c);
    if (c.command == "curve circle") return cmd_curve_circle(c);
    if (c.command == "lower circle") return cmd_lower_circle(c);
    if (c.command == "validate sqrt" || c.command == "validate circle") return cmd_validate(c);
    if (c.command == "probe") return cmd_probe(c);
    throw DomainError("unknown command '" + c.command + "'");
}

void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + temp.string());
        out << text;
        if (!out.flush()) throw Error("failed writing " + temp.string());
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw Error("cannot move output into place at " + path + ": " + ec.message());
    }
}

nlohmann::json matrix_json(const DenseMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

DenseMatrix matrix_from_json(const nlohmann::json& doc) {
    const auto n = static_cast<Eigen::Index>(doc.size());
    DenseMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = doc[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != n) throw DomainError("matrix JSON must be square");
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& e = row[static_cast<std::size_t>(j)];
            m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

}  // namespace commbound
