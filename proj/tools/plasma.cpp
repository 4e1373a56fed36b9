// plasma: synthesize boundary data, invert it, round-trip, diagnose.
//
// Exit codes: 0 ok, 2 configuration, 3 solver failure, 4 the data carry
// bound states (ind m != 0, inversion refused), 5 accuracy threshold missed.

#include "plasma/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Overrides {
    std::string config;
    std::optional<std::string> family;
    std::vector<std::string> params;
    std::optional<std::string> potential;
    std::optional<std::string> data;
    std::optional<double> k_min;
    std::optional<double> k_max;
    std::optional<int> n_k;
    std::optional<int> n_x;
    std::optional<double> dx;
    std::optional<std::string> out;
};

void add_options(CLI::App* cmd, Overrides& o, bool wants_data)
{
    cmd->add_option("-c,--config", o.config, "JSON config file (flags below override it)");
    cmd->add_option("--family", o.family, "potential family: zero, square_well, bump");
    cmd->add_option("-p,--param", o.params, "family parameter, NAME=VALUE (q0 for square_well, c for bump)");
    cmd->add_option("--potential", o.potential, "potential CSV (x,q) instead of a family");
    if (wants_data)
        cmd->add_option("--data", o.data, "boundary data CSV (k,re_um,im_um,re_up,im_up)");
    cmd->add_option("--k-min", o.k_min, "smallest wavenumber (default 0.05)");
    cmd->add_option("--k-max", o.k_max, "largest wavenumber (default 60)");
    cmd->add_option("--n-k", o.n_k, "number of wavenumbers (default 4096)");
    cmd->add_option("--n-x", o.n_x, "potential nodes on [-1, 1] (default 401)");
    cmd->add_option("--dx", o.dx, "Marchenko grid step (default 0.01)");
    cmd->add_option("-o,--out", o.out, "output directory (default out)");
}

plasma::RunConfig resolve(const std::string& stage, const Overrides& o)
{
    plasma::RunConfig cfg;
    if (!o.config.empty())
        cfg = plasma::load_config(o.config, cfg);
    cfg.stage = stage;
    if (o.family) {
        cfg.family = *o.family;
        cfg.params.clear();
    }
    for (const auto& kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw plasma::ConfigError("--param expects NAME=VALUE, got '" + kv + "'");
        try {
            std::size_t used = 0;
            const std::string value = kv.substr(eq + 1);
            cfg.params[kv.substr(0, eq)] = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw plasma::ConfigError("--param value is not a number: '" + kv + "'");
        }
    }
    if (o.potential)
        cfg.potential_csv = *o.potential;
    if (o.data)
        cfg.data_csv = *o.data;
    if (o.k_min)
        cfg.k_min = *o.k_min;
    if (o.k_max)
        cfg.k_max = *o.k_max;
    if (o.n_k)
        cfg.n_k = *o.n_k;
    if (o.n_x)
        cfg.n_x = *o.n_x;
    if (o.dx)
        cfg.marchenko.dx = *o.dx;
    if (o.out)
        cfg.output_dir = *o.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reconstruct a compactly supported potential q(x) from the boundary values u(-1,k), u(1,k)\n"
                 "of -u'' + q u - k^2 u = delta(x).\n\n"
                 "Settings come from the built-in defaults, then --config, then flags (later wins).\n"
                 "PLASMA_THREADS caps the worker count (0 or unset = all cores).\n"
                 "Exit codes: 0 ok, 2 config, 3 solver, 4 bound states present (ind m != 0), 5 accuracy."};
    app.require_subcommand(1);

    Overrides o;
    auto* fwd = app.add_subcommand("forward", "synthesize boundary data (boundary.csv, forward.json)");
    auto* inv = app.add_subcommand("invert", "recover a, b, r and q from boundary data (a/b/r/q.csv, invert.json)");
    auto* rt = app.add_subcommand("roundtrip", "forward then invert in memory, with error metrics (roundtrip.json)");
    auto* dia = app.add_subcommand("diagnose", "bound states, index identities, norming constants (diagnose.json)");
    add_options(fwd, o, false);
    add_options(inv, o, true);
    add_options(rt, o, false);
    add_options(dia, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string stage = app.get_subcommands().front()->get_name();
        const plasma::CommandResult r = plasma::run(resolve(stage, o));
        if (r.exit_code != 0)
            std::cerr << "plasma " << stage << ": " << r.message << '\n';
        return r.exit_code;
    } catch (const plasma::Error& e) {
        std::cerr << "plasma: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "plasma: unexpected failure: " << e.what() << '\n';
        return 3;
    }
}
