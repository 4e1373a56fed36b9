// Acceptance run: one line per criterion, nonzero exit if any fails.
#include "plasma/csv.hpp"
#include "plasma/pipeline.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

using namespace plasma;
namespace fs = std::filesystem;

namespace {

constexpr cplx I{0.0, 1.0};

struct Named {
    std::string name;
    Potential q;
};

const KGrid& default_grid()
{
    static const KGrid g = build_kgrid(0.05, 60.0, 4096);
    return g;
}

std::vector<Named> four()
{
    return {{"zero", sample_potential("zero", {}, 401)},
            {"well q0=1", sample_potential("square_well", {{"q0", 1.0}}, 401)},
            {"bump c=2", sample_potential("bump", {{"c", 2.0}}, 401)},
            {"well q0=-2", sample_potential("square_well", {{"q0", -2.0}}, 401)}};
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass)
        ++failures;
    std::printf("[%s] %d %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double a_error(const RecoveredSpectrum& s, const ScatteringCoefficients& sc, double lo, double hi)
{
    const std::size_t n = sc.grid.size();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (sc.grid[i] >= lo && sc.grid[i] <= hi)
            e = std::max(e, std::abs(s.a.values[n + i] - sc.a[i]));
    return e;
}

double roundtrip_error(const Potential& q, const KGrid& grid, const MarchenkoOptions& mo = {})
{
    const BoundaryData d = boundary_data(q, grid);
    const Inversion inv = invert_data(d, static_cast<int>(q.size()), {}, mo);
    return relative_l2_error(inv.reconstruction.q, q);
}

}  // namespace

int main()
{
    criterion(1, "unitarity |a|^2 = 1 + |b|^2", [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const auto& p : four())
            worst = std::max(worst, scattering_coefficients(p.q, default_grid()).unitarity_defect);
        const double t = seconds_since(t0);
        return Verdict{worst < 1e-8 && t < 10.0, fmt("max defect %.2e < 1e-8", worst) + fmt(", %.1f s < 10 s", t)};
    });

    criterion(2, "index identities", [] {
        bool ok = true;
        std::string d;
        for (const auto& p : four()) {
            const SpectrumReport r = diagnose(p.q, default_grid());
            bool good = r.J == r.ind_a;
            if (r.J == 0)
                good = good && r.ind_f == 0 && r.ind_g == 0 && r.ind_m == 0;
            else
                good = good && r.ind_m >= 0;
            ok = ok && good;
            d += p.name + ": J=" + std::to_string(r.J) + " ind_a=" + std::to_string(r.ind_a) +
                 " ind_f=" + std::to_string(r.ind_f) + " ind_g=" + std::to_string(r.ind_g) +
                 " ind_m=" + std::to_string(r.ind_m) + "; ";
        }
        return Verdict{ok, d};
    });

    criterion(3, "kappa1 <= kappa0", [] {
        const auto t0 = std::chrono::steady_clock::now();
        auto all = four();
        all.push_back({"well q0=-25", sample_potential("square_well", {{"q0", -25.0}}, 401)});
        all.push_back({"bump c=-4", sample_potential("bump", {{"c", -4.0}}, 401)});
        double worst = -1e300;
        for (const auto& p : all) {
            const KappaPair k = kappa_pair(p.q);
            worst = std::max(worst, k.kappa1 - k.kappa0);
        }
        const double t = seconds_since(t0);
        return Verdict{worst <= 1e-8 && t < 30.0,
                       fmt("max kappa1 - kappa0 = %.3e <= 1e-8", worst) + fmt(", %.1f s < 30 s", t)};
    });

    criterion(4, "Riemann recovery of a(k)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        double err = 0.0, defect = 0.0;
        for (const auto& p : four()) {
            const ScatteringCoefficients sc = scattering_coefficients(p.q, default_grid());
            if (index_of_a(sc) != 0)
                continue;  // J = 0 potentials only
            const RecoveredSpectrum s = recover_spectrum(boundary_data(sc));
            err = std::max(err, a_error(s, sc, 0.1, 40.0));
            defect = std::max(defect, s.residual);
        }
        const double t = seconds_since(t0);
        return Verdict{err <= 1e-3 && defect <= 1e-6 && t < 60.0,
                       fmt("sup|a - a_fwd| on [0.1,40] = %.2e <= 1e-3", err) + fmt(", defect %.2e <= 1e-6", defect) +
                           fmt(", %.1f s < 60 s", t)};
    });

    criterion(5, "round-trip reconstruction", [] {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string d;
        // spacing halved (k and x) and k_max doubled
        const KGrid fine = build_kgrid(0.05, 120.0, 16384);
        MarchenkoOptions fine_x;
        fine_x.dx = 0.005;
        for (const auto& p : {four()[1], four()[2]}) {
            const double e0 = roundtrip_error(p.q, default_grid());
            const double e1 = roundtrip_error(p.q, fine, fine_x);
            ok = ok && e0 <= 5e-2 && e1 <= e0;
            d += p.name + fmt(": L2 %.3e", e0) + fmt(" -> refined %.3e; ", e1);
        }
        const double t = seconds_since(t0);
        return Verdict{ok && t < 300.0, d + fmt("%.1f s < 300 s", t)};
    });

    criterion(6, "hypothesis gate", [] {
        const Potential q = sample_potential("square_well", {{"q0", -2.0}}, 401);
        const int J = count_negative_eigenvalues_line(q).J;
        const int J_oracle = oracle::finite_well_bound_states(2.0);
        const fs::path base = fs::temp_directory_path() / "plasma_acceptance_gate";
        fs::remove_all(base);
        RunConfig f;
        f.stage = "forward";
        f.family = "square_well";
        f.params = {{"q0", -2.0}};
        f.output_dir = (base / "forward").string();
        if (run(f).exit_code != 0)
            return Verdict{false, "forward failed"};
        RunConfig inv;
        inv.stage = "invert";
        inv.data_csv = (base / "forward" / "boundary.csv").string();
        inv.output_dir = (base / "invert").string();
        const CommandResult r = run(inv);
        const int ind_m = r.report.contains("indices") ? r.report["indices"]["ind_m"].get<int>() : 0;
        fs::remove_all(base);
        return Verdict{J == 1 && J_oracle == 1 && r.exit_code == 4 && ind_m != 0,
                       "J=" + std::to_string(J) + " (oracle " + std::to_string(J_oracle) + "), exit " +
                           std::to_string(r.exit_code) + ", ind_m=" + std::to_string(ind_m)};
    });

    criterion(7, "norming constant vs residue", [] {
        const Potential q = sample_potential("square_well", {{"q0", -2.0}}, 401);
        const auto s = norming_constants(q, count_negative_eigenvalues_line(q).bound_k);
        if (s.size() != 1)
            return Verdict{false, "expected one bound state, got " + std::to_string(s.size())};
        const double rel = std::abs(s[0].s - s[0].s_residue) / std::abs(s[0].s_residue);
        return Verdict{rel <= 1e-4 && s[0].s > 0.0,
                       fmt("s1 = %.10g", s[0].s) + fmt(", residue %.10g", s[0].s_residue) +
                           fmt(", relative gap %.2e <= 1e-4", rel)};
    });

    criterion(8, "zero potential exactness", [] {
        const Potential zero = sample_potential("zero", {}, 401);
        const BoundaryData d = boundary_data(zero, default_grid());
        double u_err = 0.0;
        for (std::size_t i = 0; i < d.grid.size(); ++i) {
            const double k = d.grid[i];
            const cplx want = I * std::exp(I * k) / (2.0 * k);
            u_err = std::max({u_err, std::abs(d.u_plus[i] - want), std::abs(d.u_minus[i] - want)});
        }
        const Inversion inv = invert_data(d, 401);
        double q_max = 0.0;
        for (double v : inv.reconstruction.q.samples())
            q_max = std::max(q_max, std::abs(v));
        return Verdict{u_err <= 1e-12 && q_max <= 1e-6,
                       fmt("max|u - i e^{ik}/2k| = %.2e <= 1e-12", u_err) + fmt(", max|q| = %.2e <= 1e-6", q_max)};
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
