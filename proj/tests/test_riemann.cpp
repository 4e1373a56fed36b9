#include "plasma/forward.hpp"
#include "plasma/riemann.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace plasma;

namespace {

const KGrid& default_grid()
{
    static const KGrid g = build_kgrid(0.05, 60.0, 4096);
    return g;
}

struct Case {
    ScatteringCoefficients sc;
    BoundaryData data;
};

Case synthesize(const Potential& q)
{
    ScatteringCoefficients sc = scattering_coefficients(q, default_grid());
    BoundaryData d = boundary_data(sc);
    return {std::move(sc), std::move(d)};
}

const Case& well_case()
{
    static const Case c = synthesize(sample_potential("square_well", {{"q0", 1.0}}, 401));
    return c;
}

// max error of the symmetric-grid samples against forward values on k in [lo, hi]
double positive_error(const ComplexSamples& got, const std::vector<cplx>& want, double lo, double hi)
{
    const std::size_t n = want.size();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = got.k[n + i];
        if (k >= lo && k <= hi)
            e = std::max(e, std::abs(got.values[n + i] - want[i]));
    }
    return e;
}

}  // namespace

TEST_CASE("h1 = g(0,k)/a, h2 = f(0,k)/a")
{
    const Case& c = well_case();
    const DataFunctions h = data_to_h(c.data);
    const oracle::SquareWell w{1.0};
    for (std::size_t i = 0; i < h.grid.size(); i += 11) {
        const double k = h.grid[i];
        CHECK(std::abs(h.h1[i] - w.g(0, k) / w.a(k)) <= 1e-9);
        CHECK(std::abs(h.h2[i] - w.f(0, k) / w.a(k)) <= 1e-9);
    }
}

TEST_CASE("zero potential: h = 1, a = 1, b = 0")
{
    const Case c = synthesize(sample_potential("zero", {}, 101));
    const DataFunctions h = data_to_h(c.data);
    for (std::size_t i = 0; i < h.grid.size(); ++i) {
        CHECK(std::abs(h.h1[i] - 1.0) <= 1e-12);
        CHECK(std::abs(h.h2[i] - 1.0) <= 1e-12);
    }
    const RecoveredSpectrum s = recover_spectrum(c.data);
    CHECK(s.coefficients.origin_order == 0);
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        CHECK(std::abs(s.a.values[i] - 1.0) <= 1e-10);
        CHECK(std::abs(s.b.values[i]) <= 1e-10);
    }
}

TEST_CASE("coefficients: |m| = 1 pointwise, m(-k) m(k) = 1")
{
    const Case& c = well_case();
    const RiemannCoefficients rc = rh_coefficients(extend_symmetric(data_to_h(c.data)));
    const std::size_t n = rc.k.size();
    CHECK(rc.modulus_defect <= 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(std::abs(rc.m[i]) - 1.0) <= 1e-12);
        CHECK(std::abs(rc.m[i] * rc.m[n - 1 - i] - 1.0) <= 1e-12);
    }
}

TEST_CASE("forward coefficients satisfy the jump relation a = m a(-k) + n")
{
    // unitarity written through the data: exact for the forward a
    const Case& c = well_case();
    const RiemannCoefficients rc = rh_coefficients(extend_symmetric(data_to_h(c.data)));
    const ComplexSamples a = extend_conjugate(c.sc.grid, c.sc.a);
    const std::size_t n = a.size();
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        defect = std::max(defect, std::abs(a.values[i] - rc.m[i] * a.values[n - 1 - i] - rc.n[i]));
    CHECK(defect <= 1e-9);
}

TEST_CASE("indices for a potential without bound states")
{
    const RiemannCoefficients rc = rh_coefficients(extend_symmetric(data_to_h(well_case().data)));
    CHECK(rc.origin_order == 2);
    CHECK(rc.ind_h1 == 0);
    CHECK(rc.ind_h2 == 0);
    CHECK(rc.ind_m == 0);
}

TEST_CASE("recovery of a, b and r")
{
    for (const auto& [family, params] :
         std::vector<std::pair<std::string, FamilyParams>>{{"square_well", {{"q0", 1.0}}}, {"bump", {{"c", 2.0}}}}) {
        CAPTURE(family);
        const Case c = synthesize(sample_potential(family, params, 401));
        const RecoveredSpectrum s = recover_spectrum(c.data);
        CHECK(s.residual <= 1e-6);
        CHECK(positive_error(s.a, c.sc.a, 0.1, 40.0) <= 1e-3);
        CHECK(positive_error(s.b, c.sc.b, 0.1, 40.0) <= 1e-3);
        std::vector<cplx> r(c.sc.a.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = c.sc.b[i] / c.sc.a[i];
        CHECK(positive_error(s.r, r, 0.1, 40.0) <= 2e-3);
        // conjugate symmetry of the outputs
        const std::size_t n = s.r.size();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(s.r.values[i] - std::conj(s.r.values[n - 1 - i])) <= 1e-12);
    }
}

TEST_CASE("bound states trip the hypothesis gate")
{
    const Case c = synthesize(sample_potential("square_well", {{"q0", -2.0}}, 401));
    const RiemannCoefficients rc = rh_coefficients(extend_symmetric(data_to_h(c.data)));
    CHECK(rc.ind_m > 0);
    try {
        recover_spectrum(c.data);
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        CHECK(e.index() == rc.ind_m);
        CHECK(std::string(e.what()).find("ind_m") != std::string::npos);
    }
}

TEST_CASE("tight thresholds are enforced")
{
    RiemannOptions strict;
    strict.analyticity_tol = 1e-12;
    CHECK_THROWS_AS(recover_spectrum(well_case().data, strict), AccuracyError);
}
