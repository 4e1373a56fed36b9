#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plasma {

using cplx = std::complex<double>;

// Error categories map onto the CLI exit codes (2, 3, 4, 5).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class SolverError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Raised when the input violates the no-bound-state hypothesis of the inversion.
class HypothesisError : public Error {
public:
    HypothesisError(const std::string& what, int index) : Error(what), index_(index) {}
    int exit_code() const noexcept override { return 4; }
    int index() const noexcept { return index_; }

private:
    int index_;
};

class AccuracyError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

inline constexpr double kDefaultKMinFloor = 0.05;

/// Real potential sampled on a uniform grid over [-1, 1]; identically zero outside.
///
/// Between nodes the potential is piecewise linear. The support endpoints are
/// fixed, callers with a different support must rescale before constructing.
class Potential {
public:
    static constexpr double x_min = -1.0;
    static constexpr double x_max = 1.0;

    explicit Potential(std::vector<double> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    double spacing() const noexcept { return (x_max - x_min) / static_cast<double>(samples_.size() - 1); }
    double node(std::size_t i) const noexcept;
    std::span<const double> samples() const noexcept { return samples_; }

    /// Piecewise-linear value; zero for |x| > 1.
    double operator()(double x) const noexcept;

    /// Exact integral of the interpolant over [lo, hi].
    double integral(double lo, double hi) const noexcept;

private:
    std::vector<double> samples_;
};

/// Strictly increasing positive wavenumbers, bounded below by a configured floor.
class KGrid {
public:
    explicit KGrid(std::vector<double> k, double k_min_floor = kDefaultKMinFloor);

    std::size_t size() const noexcept { return k_.size(); }
    double operator[](std::size_t i) const noexcept { return k_[i]; }
    std::span<const double> values() const noexcept { return k_; }
    double front() const noexcept { return k_.front(); }
    double back() const noexcept { return k_.back(); }

    /// Nodes -k[n-1], ..., -k[0], k[0], ..., k[n-1].
    std::vector<double> symmetric() const;

private:
    std::vector<double> k_;
};

/// Uniform grid with endpoints exactly k_min and k_max.
KGrid build_kgrid(double k_min, double k_max, int n_k, double k_min_floor = kDefaultKMinFloor);

/// Complex samples of a function over a set of real abscissae.
struct ComplexSamples {
    std::vector<double> k;
    std::vector<cplx> values;

    ComplexSamples() = default;
    ComplexSamples(std::vector<double> k, std::vector<cplx> values);

    std::size_t size() const noexcept { return values.size(); }
};

/// Boundary values u(-1,k) and u(1,k) of the point-source problem.
struct BoundaryData {
    KGrid grid;
    std::vector<cplx> u_minus;
    std::vector<cplx> u_plus;

    BoundaryData(KGrid grid, std::vector<cplx> u_minus, std::vector<cplx> u_plus);
};

using FamilyParams = std::map<std::string, double>;

/// Test-potential factory: "zero", "square_well" {q0}, "bump" {c} with c (1-x^2)^2.
Potential sample_potential(const std::string& family, const FamilyParams& params, int n_x);

/// Extends samples given on k > 0 to the symmetric grid using f(-k) = conj(f(k)).
ComplexSamples extend_conjugate(const KGrid& grid, std::span<const cplx> positive);

}  // namespace plasma
