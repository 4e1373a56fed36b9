#include "plasma/winding.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace plasma;

namespace {

constexpr cplx I{0.0, 1.0};

ComplexSamples sample(const std::function<cplx(double)>& fn, double k_max = 60.0, int n = 4096)
{
    const auto k = build_kgrid(0.05, k_max, n).symmetric();
    std::vector<cplx> v(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        v[i] = fn(k[i]);
    return ComplexSamples(k, v);
}

}  // namespace

// ((k - i)/(k + i))^n has n zeros at k = i, none in the lower half-plane.
TEST_CASE("Blaschke factors count their upper half-plane zeros")
{
    for (int n = -2; n <= 3; ++n) {
        CAPTURE(n);
        const auto s = sample([n](double k) { return std::pow((k - I) / (k + I), n); });
        const WindingResult w = winding_index(s);
        CHECK(w.index == n);
        CHECK(w.defect <= 1e-6);
    }
}

TEST_CASE("zeros and poles at k = 0 are excluded by the indentation")
{
    // k/(k+i): simple zero at the origin, pole below: index 0
    const auto z = sample([](double k) { return k / (k + I); });
    CHECK(origin_order(z) == 1);
    CHECK(winding_index(z).index == 0);
    // (k+i)/k: a(k)-like simple pole at the origin
    const auto p = sample([](double k) { return (k + I) / k; });
    CHECK(origin_order(p) == -1);
    CHECK(winding_index(p).index == 0);
    // k^2 (k - 2i)/(k + i)^3: double zero at 0 plus one zero above
    const auto q = sample([](double k) { return k * k * (k - 2.0 * I) / std::pow(k + I, 3); });
    CHECK(origin_order(q) == 2);
    CHECK(winding_index(q).index == 1);
}

TEST_CASE("tails beyond the grid are closed")
{
    // exp(i c / k)-type tail: the phase has not settled at k_max
    const auto s = sample([](double k) { return std::exp(-I * 12.5 / std::sqrt(k * k + 1.0)) * (k - I) / (k + I); });
    CHECK(winding_index(s).index == 1);
}

TEST_CASE("refusals")
{
    auto with_zero = sample([](double) { return cplx(1.0); }, 6.0, 61);
    with_zero.values[70] = 0.0;
    CHECK_THROWS_AS(winding_index(with_zero), SolverError);

    // about 2 rad between adjacent nodes: too coarse to unwrap safely
    const auto fast = sample([](double k) { return std::exp(I * 10.4 * k); }, 6.0, 32);
    CHECK_THROWS_AS(winding_index(fast), SolverError);

    // |k|^(1/2) is not an integer-order behaviour
    const auto half = sample([](double k) { return std::sqrt(std::abs(k)) + 0.0 * I; });
    CHECK_THROWS_AS(origin_order(half), SolverError);
}

TEST_CASE("median magnitude")
{
    CHECK(median_magnitude({cplx(3, 4), cplx(1, 0), cplx(0, 2)}) == 2.0);
    CHECK(median_magnitude({}) == 0.0);
}
