#include "plasma/csv.hpp"

#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

using namespace plasma;

TEST_CASE("17 digits parse back to the same double")
{
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 20000) {
        const std::uint64_t b = bits(rng);
        double v;
        std::memcpy(&v, &b, sizeof v);
        if (!std::isfinite(v))
            continue;
        const double back = std::strtod(csv::format_double(v).c_str(), nullptr);
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
        ++checked;
    }
}

TEST_CASE("potential round trip is bit-for-bit")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    std::vector<double> s(257);
    for (double& v : s)
        v = gauss(rng) * 1e3;
    const Potential q(s);
    std::stringstream ss;
    csv::write_potential(ss, q);
    const Potential back = csv::read_potential(ss);
    REQUIRE(back.size() == q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(back.samples()[i] == q.samples()[i]);
}

TEST_CASE("spectral and boundary round trips")
{
    const KGrid g = build_kgrid(0.05, 3.0, 17);
    std::vector<cplx> um, up;
    for (std::size_t i = 0; i < g.size(); ++i) {
        um.emplace_back(std::sin(g[i]) / 3.0, std::exp(-g[i]));
        up.emplace_back(1.0 / g[i], -std::cos(g[i]) * 1e-7);
    }
    const BoundaryData d(g, um, up);
    std::stringstream ss;
    csv::write_boundary(ss, d);
    CHECK(ss.str().rfind("k,re_um,im_um,re_up,im_up\n", 0) == 0);
    const BoundaryData back = csv::read_boundary(ss);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(back.grid[i] == g[i]);
        CHECK(back.u_minus[i] == um[i]);
        CHECK(back.u_plus[i] == up[i]);
    }

    const ComplexSamples s = extend_conjugate(g, up);
    std::stringstream sp;
    csv::write_spectral(sp, s);
    CHECK(sp.str().rfind("k,re,im\n", 0) == 0);
    const ComplexSamples sb = csv::read_spectral(sp);
    CHECK(sb.k == s.k);
    CHECK(sb.values == s.values);
}

TEST_CASE("malformed input")
{
    std::stringstream bad_header("x,v\n-1,0\n0,0\n1,0\n");
    CHECK_THROWS_AS(csv::read_potential(bad_header), ConfigError);
    std::stringstream uneven("x,q\n-1,0\n0.2,0\n1,0\n");
    CHECK_THROWS_AS(csv::read_potential(uneven), ConfigError);
    std::stringstream junk("x,q\n-1,0\n0,abc\n1,0\n");
    CHECK_THROWS_AS(csv::read_potential(junk), ConfigError);
    std::stringstream short_row("k,re_um,im_um,re_up,im_up\n0.1,1,2,3\n");
    CHECK_THROWS_AS(csv::read_boundary(short_row), ConfigError);
    CHECK_THROWS_AS(csv::load_potential("/nonexistent/q.csv"), ConfigError);
}
