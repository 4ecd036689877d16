// commbound: commutator-norm bound curves, matrix validation and probing.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commbound/errors.hpp"
#include "commbound/experiments.hpp"

namespace {

struct Flags {
    std::string function = "triangle";
    double delta_min = 0.0, delta_max = 0.0, delta = 0.0;
    int steps = 0, n_max = 0, a_grid = commbound::kDefaultTangentGrid, iterations = 10000;
    std::size_t samples = 0;
    std::string dims = "2-8";
    std::uint64_t seed = 42;
    std::string out;
    std::string format;
    bool pedersen_only = false;
    std::string spectrum_mode;
    std::string config_file;
};

struct Leaf {
    CLI::App* app;
    std::string command;
};

void add_flags(CLI::App* app, Flags& f) {
    app->add_option("--function", f.function, "triangle | bump | cos | sqrt | coefficient JSON file")
        ->capture_default_str();
    app->add_option("--delta-min", f.delta_min, "grid start (default 1e-3 for sqrt, 0 for circle)");
    app->add_option("--delta-max", f.delta_max, "grid end (default 1 for sqrt, 1.999 for circle)");
    app->add_option("--steps", f.steps, "grid points (default 1000 for sqrt, 500 for circle)");
    app->add_option("--delta", f.delta, "probe target delta (default 0.25)");
    app->add_option("--n-max", f.n_max, "truncation depth (default 100000 for sqrt, 64 for circle)");
    app->add_option("--a-grid", f.a_grid, "tangent-line grid on [1/4, 1]")->capture_default_str();
    app->add_option("--samples", f.samples, "validation samples (default 2000 sqrt, 1000 circle)");
    app->add_option("--dims", f.dims, "matrix dimensions N or MIN-MAX")->capture_default_str();
    app->add_option("--seed", f.seed, "base seed")->capture_default_str();
    app->add_option("--iters", f.iterations, "probe hill-climb steps in total")->capture_default_str();
    app->add_option("--out", f.out, "output file (default stdout)");
    app->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app->add_flag("--pedersen-only", f.pedersen_only, "curve sqrt: Pedersen lines only");
    app->add_option("--spectrum-mode", f.spectrum_mode, "uniform | atoms (default: alternate)")
        ->check(CLI::IsMember({"uniform", "atoms"}));
    app->add_option("--config", f.config_file, "JSON config file; command-line flags take precedence");
}

commbound::RunConfig to_config(const Leaf& leaf, const Flags& f) {
    using namespace commbound;
    RunConfig c;
    c.command = leaf.command;
    std::set<std::string> given;
    auto set = [&](const char* name) {
        if (leaf.app->count(std::string("--") + name) == 0) return false;
        given.insert(name);
        return true;
    };
    if (set("function")) c.function = f.function;
    if (set("delta-min")) c.delta_min = f.delta_min;
    if (set("delta-max")) c.delta_max = f.delta_max;
    if (set("steps")) c.steps = f.steps;
    if (set("delta")) c.delta = f.delta;
    if (set("n-max")) c.n_max = f.n_max;
    if (set("a-grid")) c.a_grid = f.a_grid;
    if (set("samples")) c.samples = f.samples;
    if (set("dims")) std::tie(c.dim_min, c.dim_max) = parse_dims(f.dims);
    if (set("seed")) c.seed = f.seed;
    if (set("iters")) c.iterations = f.iterations;
    if (set("out")) c.out = f.out;
    if (set("format")) c.format = parse_format(f.format);
    if (set("pedersen-only")) c.pedersen_only = f.pedersen_only;
    if (set("spectrum-mode")) c.spectrum_mode = parse_spectrum_mode(f.spectrum_mode);

    if (!f.config_file.empty()) {
        std::ifstream in(f.config_file);
        if (!in) throw DomainError("cannot open config file " + f.config_file);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw DomainError(std::string("config file is not valid JSON: ") + e.what());
        }
        apply_config_json(c, doc, given);
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified upper and constructive lower bounds for commutator norms ||[f(X), A]||.\n"
                 "Set COMMBOUND_THREADS to cap worker threads."};
    app.require_subcommand(1);
    Flags flags;
    std::vector<Leaf> leaves;

    auto* curve = app.add_subcommand("curve", "emit an upper-bound curve");
    curve->require_subcommand(1);
    leaves.push_back({curve->add_subcommand("sqrt", "gamma0 envelope for sqrt(x): delta,gamma0,sqrt_delta,ratio"),
                      "curve sqrt"});
    leaves.push_back({curve->add_subcommand("circle", "truncation envelope and lower bound: delta,upper,lower,provenance"),
                      "curve circle"});
    auto* lower = app.add_subcommand("lower", "emit a lower-bound curve");
    lower->require_subcommand(1);
    leaves.push_back({lower->add_subcommand("circle", "two-point lower bound: delta,lower,x1,x2"), "lower circle"});
    auto* validate = app.add_subcommand("validate", "check a bound curve against random matrices");
    validate->require_subcommand(1);
    leaves.push_back({validate->add_subcommand("sqrt", "random (H, A) pairs against gamma0"), "validate sqrt"});
    leaves.push_back({validate->add_subcommand("circle", "random (V, A) pairs against the truncation envelope"),
                      "validate circle"});
    leaves.push_back({app.add_subcommand("probe", "hill-climb for large ||[sqrt(H), A]|| at fixed ||[H, A]||"),
                      "probe"});
    for (auto& leaf : leaves) add_flags(leaf.app, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& leaf : leaves) {
            if (!leaf.app->parsed()) continue;
            const auto config = to_config(leaf, flags);
            const auto result = commbound::run_command(config);
            if (config.out.empty() || config.out == "-")
                std::fwrite(result.text.data(), 1, result.text.size(), stdout);
            else
                commbound::write_atomically(config.out, result.text);
            std::cerr << config.command << ": " << result.summary << "\n";
            return result.exit_code;
        }
    } catch (const commbound::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
