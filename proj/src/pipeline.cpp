#include "plasma/pipeline.hpp"

#include "plasma/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace plasma {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw ConfigError("config: unknown key '" + key + "' in '" + where + "'");
    }
}

template <typename T>
void take(const json& obj, const char* key, T& dst, const std::string& where)
{
    if (!obj.contains(key))
        return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: '" + where + "." + key + "' has the wrong type");
    }
}

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v))
        throw ConfigError(std::string("config: ") + name + " must be finite");
}

void require_positive(double v, const char* name)
{
    require_finite(v, name);
    if (!(v > 0.0))
        throw ConfigError(std::string("config: ") + name + " must be positive");
}

// Created on construction, removed on destruction; a second run on the same
// directory fails instead of interleaving writes.
class DirectoryLock {
public:
    explicit DirectoryLock(const std::filesystem::path& dir) : path_(dir / ".plasma.lock")
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
        FILE* f = std::fopen(path_.c_str(), "wx");
        if (!f)
            throw ConfigError("output directory " + dir.string() + " is locked by another run (" +
                              path_.string() + ")");
        std::fclose(f);
    }
    ~DirectoryLock()
    {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    std::filesystem::path path_;
};

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer)
{
    std::ofstream os(path);
    if (!os)
        throw ConfigError("cannot write " + path.string());
    writer(os);
    if (!os)
        throw ConfigError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j)
{
    write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

json error_json(const Error& e)
{
    const char* kind = "error";
    switch (e.exit_code()) {
    case 2: kind = "config"; break;
    case 3: kind = "solver"; break;
    case 4: kind = "hypothesis"; break;
    case 5: kind = "accuracy"; break;
    default: break;
    }
    return {{"kind", kind}, {"message", e.what()}, {"exit_code", e.exit_code()}};
}

json base_report(const RunConfig& cfg, const char* command)
{
    return {{"command", command}, {"status", "ok"}, {"config", to_json(cfg)}};
}

CommandResult fail(json report, const Error& e)
{
    report["status"] = "error";
    report["error"] = error_json(e);
    return {e.exit_code(), e.what(), std::move(report)};
}

json indices_json(const RiemannCoefficients& c)
{
    return {{"ind_h1", c.ind_h1}, {"ind_h2", c.ind_h2}, {"ind_m", c.ind_m}, {"origin_order", c.origin_order}};
}

double linf_error(const Potential& estimate, const Potential& truth)
{
    double e = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i)
        e = std::max(e, std::abs(estimate.samples()[i] - truth.samples()[i]));
    return e;
}

void check_grid_matches(const KGrid& data, const KGrid& expected)
{
    bool same = data.size() == expected.size();
    for (std::size_t i = 0; same && i < data.size(); ++i)
        same = std::abs(data[i] - expected[i]) <= 1e-9 * expected.back();
    if (!same) {
        std::ostringstream msg;
        msg << "boundary data grid (" << data.size() << " nodes on [" << data.front() << ", " << data.back()
            << "]) does not match the configured k-grid (" << expected.size() << " nodes on [" << expected.front()
            << ", " << expected.back() << "])";
        throw ConfigError(msg.str());
    }
}

// inversion stages shared by invert and roundtrip; fills the report as far as it gets
CommandResult inversion_stage(json report, const BoundaryData& data, const RunConfig& cfg,
                              const std::optional<Potential>& truth, const std::filesystem::path* out)
{
    try {
        const auto coeffs = rh_coefficients(extend_symmetric(data_to_h(data, cfg.riemann)), cfg.riemann);
        report["indices"] = indices_json(coeffs);
        report["residuals"] = {{"modulus_defect", coeffs.modulus_defect}};

        const RecoveredSpectrum spec = recover_spectrum(data, cfg.riemann);
        report["residuals"] = {{"riemann_residual", spec.residual},
                               {"cross_check_residual", spec.cross_check_residual},
                               {"analyticity_defect", spec.analyticity_defect},
                               {"unitarity_defect", spec.unitarity_defect},
                               {"modulus_defect", coeffs.modulus_defect}};
        if (out) {
            write_file(*out / "a.csv", [&](std::ostream& os) { csv::write_spectral(os, spec.a); });
            write_file(*out / "b.csv", [&](std::ostream& os) { csv::write_spectral(os, spec.b); });
            write_file(*out / "r.csv", [&](std::ostream& os) { csv::write_spectral(os, spec.r); });
        }

        const MarchenkoKernel kernel = solve_kernel(spec.r, cfg.marchenko);
        const Reconstruction rec = recover_q(kernel, cfg.n_x);
        json acc = {{"leakage", rec.leakage}, {"marchenko_residual", kernel.max_residual},
                    {"kernel_tail", kernel.tail}, {"fourier_imag_residue", kernel.F.max_imag}};
        if (truth) {
            acc["l2_rel_error"] = relative_l2_error(rec.q, *truth);
            acc["linf_error"] = linf_error(rec.q, *truth);
        }
        report["accuracy"] = acc;
        if (out)
            write_file(*out / "q.csv", [&](std::ostream& os) { csv::write_potential(os, rec.q); });
    } catch (const Error& e) {
        return fail(std::move(report), e);
    }
    return {0, "", std::move(report)};
}

}  // namespace

RunConfig apply_json(RunConfig cfg, const json& j)
{
    check_keys(j, {"stage", "potential", "data", "k_grid", "winding", "forward", "riemann", "marchenko", "spectral",
                   "output_dir"},
               "root");
    take(j, "stage", cfg.stage, "root");
    take(j, "data", cfg.data_csv, "root");
    take(j, "output_dir", cfg.output_dir, "root");
    if (j.contains("potential")) {
        const json& p = j["potential"];
        check_keys(p, {"family", "params", "csv", "n_x"}, "potential");
        take(p, "family", cfg.family, "potential");
        take(p, "csv", cfg.potential_csv, "potential");
        take(p, "n_x", cfg.n_x, "potential");
        if (p.contains("params")) {
            FamilyParams params;
            take(p, "params", params, "potential");
            cfg.params = params;
        }
    }
    if (j.contains("k_grid")) {
        const json& g = j["k_grid"];
        check_keys(g, {"k_min", "k_max", "n_k", "k_min_floor"}, "k_grid");
        take(g, "k_min", cfg.k_min, "k_grid");
        take(g, "k_max", cfg.k_max, "k_grid");
        take(g, "n_k", cfg.n_k, "k_grid");
        take(g, "k_min_floor", cfg.k_min_floor, "k_grid");
    }
    if (j.contains("winding")) {
        const json& w = j["winding"];
        check_keys(w, {"zero_threshold", "max_phase_step"}, "winding");
        take(w, "zero_threshold", cfg.riemann.winding.zero_threshold, "winding");
        take(w, "max_phase_step", cfg.riemann.winding.max_phase_step, "winding");
    }
    if (j.contains("forward")) {
        const json& f = j["forward"];
        check_keys(f, {"substeps", "unitarity_tol", "refine_tol", "max_substeps"}, "forward");
        take(f, "substeps", cfg.forward.jost.substeps, "forward");
        take(f, "unitarity_tol", cfg.forward.unitarity_tol, "forward");
        take(f, "refine_tol", cfg.forward.refine_tol, "forward");
        take(f, "max_substeps", cfg.forward.max_substeps, "forward");
    }
    if (j.contains("riemann")) {
        const json& r = j["riemann"];
        check_keys(r, {"residual_tol", "cross_check_tol", "analyticity_tol", "modulus_tol"}, "riemann");
        take(r, "residual_tol", cfg.riemann.residual_tol, "riemann");
        take(r, "cross_check_tol", cfg.riemann.cross_check_tol, "riemann");
        take(r, "analyticity_tol", cfg.riemann.analyticity_tol, "riemann");
        take(r, "modulus_tol", cfg.riemann.modulus_tol, "riemann");
    }
    if (j.contains("marchenko")) {
        const json& m = j["marchenko"];
        check_keys(m, {"x_lo", "x_hi", "dx", "taper_fraction", "truncation_margin", "imag_tol", "residual_tol",
                       "condition_limit"},
                   "marchenko");
        take(m, "x_lo", cfg.marchenko.x_lo, "marchenko");
        take(m, "x_hi", cfg.marchenko.x_hi, "marchenko");
        take(m, "dx", cfg.marchenko.dx, "marchenko");
        take(m, "taper_fraction", cfg.marchenko.taper_fraction, "marchenko");
        take(m, "truncation_margin", cfg.marchenko.truncation_margin, "marchenko");
        take(m, "imag_tol", cfg.marchenko.imag_tol, "marchenko");
        take(m, "residual_tol", cfg.marchenko.residual_tol, "marchenko");
        take(m, "condition_limit", cfg.marchenko.condition_limit, "marchenko");
    }
    if (j.contains("spectral")) {
        const json& s = j["spectral"];
        check_keys(s, {"box_radius", "nodes", "eps_spec", "newton_tol", "residue_tol", "imag_tol"}, "spectral");
        take(s, "box_radius", cfg.spectral.box_radius, "spectral");
        take(s, "nodes", cfg.spectral.nodes, "spectral");
        take(s, "eps_spec", cfg.spectral.eps_spec, "spectral");
        take(s, "newton_tol", cfg.spectral.newton_tol, "spectral");
        take(s, "residue_tol", cfg.spectral.residue_tol, "spectral");
        take(s, "imag_tol", cfg.spectral.imag_tol, "spectral");
    }
    cfg.spectral.winding = cfg.riemann.winding;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return apply_json(std::move(base), j);
}

json to_json(const RunConfig& cfg)
{
    json params = json::object();
    for (const auto& [k, v] : cfg.params)
        params[k] = v;
    return {
        {"stage", cfg.stage},
        {"potential", {{"family", cfg.family}, {"params", params}, {"csv", cfg.potential_csv}, {"n_x", cfg.n_x}}},
        {"data", cfg.data_csv},
        {"k_grid", {{"k_min", cfg.k_min}, {"k_max", cfg.k_max}, {"n_k", cfg.n_k}, {"k_min_floor", cfg.k_min_floor}}},
        {"winding",
         {{"zero_threshold", cfg.riemann.winding.zero_threshold},
          {"max_phase_step", cfg.riemann.winding.max_phase_step}}},
        {"forward",
         {{"substeps", cfg.forward.jost.substeps},
          {"unitarity_tol", cfg.forward.unitarity_tol},
          {"refine_tol", cfg.forward.refine_tol},
          {"max_substeps", cfg.forward.max_substeps}}},
        {"riemann",
         {{"residual_tol", cfg.riemann.residual_tol},
          {"cross_check_tol", cfg.riemann.cross_check_tol},
          {"analyticity_tol", cfg.riemann.analyticity_tol},
          {"modulus_tol", cfg.riemann.modulus_tol}}},
        {"marchenko",
         {{"x_lo", cfg.marchenko.x_lo},
          {"x_hi", cfg.marchenko.x_hi},
          {"dx", cfg.marchenko.dx},
          {"taper_fraction", cfg.marchenko.taper_fraction},
          {"truncation_margin", cfg.marchenko.truncation_margin},
          {"imag_tol", cfg.marchenko.imag_tol},
          {"residual_tol", cfg.marchenko.residual_tol},
          {"condition_limit", cfg.marchenko.condition_limit}}},
        {"spectral",
         {{"box_radius", cfg.spectral.box_radius},
          {"nodes", cfg.spectral.nodes},
          {"eps_spec", cfg.spectral.eps_spec},
          {"newton_tol", cfg.spectral.newton_tol},
          {"residue_tol", cfg.spectral.residue_tol},
          {"imag_tol", cfg.spectral.imag_tol}}},
        {"output_dir", cfg.output_dir},
    };
}

void validate(const RunConfig& cfg)
{
    require_positive(cfg.k_min, "k_grid.k_min");
    require_positive(cfg.k_max, "k_grid.k_max");
    require_positive(cfg.k_min_floor, "k_grid.k_min_floor");
    if (!(cfg.k_max > cfg.k_min))
        throw ConfigError("config: k_max must exceed k_min");
    if (cfg.n_k < 8)
        throw ConfigError("config: n_k must be at least 8");
    if (cfg.n_x < 3)
        throw ConfigError("config: potential.n_x must be at least 3");
    for (const auto& [k, v] : cfg.params)
        require_finite(v, ("potential.params." + k).c_str());
    for (double v : {cfg.forward.unitarity_tol, cfg.forward.refine_tol, cfg.riemann.residual_tol,
                     cfg.riemann.cross_check_tol, cfg.riemann.analyticity_tol, cfg.riemann.modulus_tol,
                     cfg.riemann.winding.zero_threshold, cfg.riemann.winding.max_phase_step, cfg.marchenko.dx,
                     cfg.marchenko.imag_tol, cfg.marchenko.residual_tol, cfg.marchenko.condition_limit,
                     cfg.spectral.box_radius, cfg.spectral.eps_spec, cfg.spectral.newton_tol,
                     cfg.spectral.residue_tol, cfg.spectral.imag_tol})
        require_positive(v, "tolerances and step sizes");
    for (double v : {cfg.marchenko.x_lo, cfg.marchenko.x_hi, cfg.marchenko.taper_fraction,
                     cfg.marchenko.truncation_margin})
        require_finite(v, "marchenko grid parameters");
    if (cfg.marchenko.x_lo > -1.0 || cfg.marchenko.x_hi < 1.0)
        throw ConfigError("config: the Marchenko x-grid must cover [-1, 1]");
    if (cfg.forward.jost.substeps < 1 || cfg.forward.max_substeps < cfg.forward.jost.substeps)
        throw ConfigError("config: forward substeps must satisfy 1 <= substeps <= max_substeps");
    if (cfg.output_dir.empty())
        throw ConfigError("config: output_dir is empty");
    if (!cfg.potential_csv.empty() && !std::filesystem::is_regular_file(cfg.potential_csv))
        throw ConfigError("potential file not found: " + cfg.potential_csv);
    if (!cfg.data_csv.empty() && !std::filesystem::is_regular_file(cfg.data_csv))
        throw ConfigError("boundary data file not found: " + cfg.data_csv);
}

Potential truth_potential(const RunConfig& cfg)
{
    if (!cfg.potential_csv.empty())
        return csv::load_potential(cfg.potential_csv);
    if (cfg.family.empty())
        throw ConfigError("no potential given (set potential.family or potential.csv)");
    return sample_potential(cfg.family, cfg.params, cfg.n_x);
}

KGrid config_grid(const RunConfig& cfg)
{
    return build_kgrid(cfg.k_min, cfg.k_max, cfg.n_k, cfg.k_min_floor);
}

std::string potential_hash(const Potential& q)
{
    std::ostringstream os;
    csv::write_potential(os, q);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Inversion invert_data(const BoundaryData& data, int n_x, const RiemannOptions& riemann,
                      const MarchenkoOptions& marchenko)
{
    Inversion out;
    out.spectrum = recover_spectrum(data, riemann);
    out.kernel = solve_kernel(out.spectrum.r, marchenko);
    out.reconstruction = recover_q(out.kernel, n_x);
    return out;
}

json to_json(const SpectrumReport& rep)
{
    json norming = json::array();
    for (const auto& nc : rep.norming)
        norming.push_back({{"k", nc.k},
                           {"s", nc.s},
                           {"s_residue", nc.s_residue},
                           {"s_eigenvector", nc.s_eigenvector},
                           {"a_residual", nc.a_residual},
                           {"imag_part", nc.imag_part}});
    return {{"j", rep.J},         {"kappa0", rep.kappa0}, {"kappa1", rep.kappa1}, {"ind_a", rep.ind_a},
            {"ind_f", rep.ind_f}, {"ind_g", rep.ind_g},   {"ind_m", rep.ind_m},   {"bound_k", rep.bound_k},
            {"norming", norming}};
}

CommandResult cmd_forward(const RunConfig& cfg)
{
    validate(cfg);
    const Potential q = truth_potential(cfg);
    const KGrid grid = config_grid(cfg);

    const std::filesystem::path out(cfg.output_dir);
    DirectoryLock lock(out);
    json report = base_report(cfg, "forward");
    report["provenance"] = {{"potential_hash", potential_hash(q)},
                            {"n_x", q.size()},
                            {"k_grid", {{"k_min", grid.front()}, {"k_max", grid.back()}, {"n_k", grid.size()}}}};
    try {
        const ScatteringCoefficients sc = scattering_coefficients(q, grid, cfg.forward);
        report["forward"] = {{"unitarity_defect", sc.unitarity_defect}, {"substeps", sc.substeps}};
        write_file(out / "boundary.csv", [&](std::ostream& os) { csv::write_boundary(os, boundary_data(sc)); });
        report["files"] = {{"boundary", "boundary.csv"}};
    } catch (const Error& e) {
        CommandResult r = fail(std::move(report), e);
        write_json(out / "forward.json", r.report);
        return r;
    }
    write_json(out / "forward.json", report);
    return {0, "", report};
}

CommandResult cmd_invert(const RunConfig& cfg)
{
    validate(cfg);
    if (cfg.data_csv.empty())
        throw ConfigError("invert needs boundary data (--data)");
    const BoundaryData data = csv::load_boundary(cfg.data_csv, cfg.k_min_floor);
    check_grid_matches(data.grid, config_grid(cfg));
    std::optional<Potential> truth;
    if (cfg.has_truth())
        truth = truth_potential(cfg);
    if (truth && static_cast<int>(truth->size()) != cfg.n_x)
        throw ConfigError("truth potential has " + std::to_string(truth->size()) + " nodes but n_x is " +
                          std::to_string(cfg.n_x));

    const std::filesystem::path out(cfg.output_dir);
    DirectoryLock lock(out);
    CommandResult r = inversion_stage(base_report(cfg, "invert"), data, cfg, truth, &out);
    if (r.exit_code == 0)
        r.report["files"] = {{"a", "a.csv"}, {"b", "b.csv"}, {"r", "r.csv"}, {"q", "q.csv"}};
    write_json(out / "invert.json", r.report);
    return r;
}

CommandResult cmd_roundtrip(const RunConfig& cfg)
{
    validate(cfg);
    if (!cfg.has_truth())
        throw ConfigError("roundtrip needs a truth potential");
    const Potential q = truth_potential(cfg);
    const KGrid grid = config_grid(cfg);
    RunConfig eff = cfg;
    eff.n_x = static_cast<int>(q.size());

    const std::filesystem::path out(cfg.output_dir);
    DirectoryLock lock(out);
    json report = base_report(eff, "roundtrip");
    report["provenance"] = {{"potential_hash", potential_hash(q)}};
    CommandResult r;
    try {
        const ScatteringCoefficients sc = scattering_coefficients(q, grid, cfg.forward);
        report["forward"] = {{"unitarity_defect", sc.unitarity_defect}, {"substeps", sc.substeps}};
        r = inversion_stage(std::move(report), boundary_data(sc), eff, q, nullptr);
    } catch (const Error& e) {
        r = fail(std::move(report), e);
    }
    write_json(out / "roundtrip.json", r.report);
    return r;
}

CommandResult cmd_diagnose(const RunConfig& cfg)
{
    validate(cfg);
    const Potential q = truth_potential(cfg);
    const KGrid grid = config_grid(cfg);

    const std::filesystem::path out(cfg.output_dir);
    DirectoryLock lock(out);
    json report = base_report(cfg, "diagnose");
    report["provenance"] = {{"potential_hash", potential_hash(q)}};
    CommandResult r;
    try {
        report["spectrum"] = to_json(diagnose(q, grid, cfg.spectral, cfg.forward));
        r = {0, "", std::move(report)};
    } catch (const Error& e) {
        r = fail(std::move(report), e);
    }
    write_json(out / "diagnose.json", r.report);
    return r;
}

CommandResult run(const RunConfig& cfg)
{
    if (cfg.stage == "forward")
        return cmd_forward(cfg);
    if (cfg.stage == "invert")
        return cmd_invert(cfg);
    if (cfg.stage == "roundtrip")
        return cmd_roundtrip(cfg);
    if (cfg.stage == "diagnose")
        return cmd_diagnose(cfg);
    throw ConfigError("unknown stage '" + cfg.stage + "' (expected forward, invert, roundtrip or diagnose)");
}

}  // namespace plasma
