#include "plasma/pipeline.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace plasma;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

template <typename T>
std::vector<T> to_vector(const py::array_t<T, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 1)
        throw ConfigError("expected a one-dimensional array");
    return std::vector<T>(a.data(), a.data() + a.size());
}

template <typename T>
py::array_t<T> to_array(std::span<const T> v)
{
    py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v)
{
    return to_array(std::span<const T>(v));
}

py::dict samples_dict(const ComplexSamples& s)
{
    py::dict d;
    d["k"] = to_array(s.k);
    d["values"] = to_array(s.values);
    return d;
}

BoundaryData boundary(const RealArray& k, const ComplexArray& u_minus, const ComplexArray& u_plus, double floor)
{
    return BoundaryData(KGrid(to_vector(k), floor), to_vector(u_minus), to_vector(u_plus));
}

py::dict indices(const RiemannCoefficients& c)
{
    py::dict d;
    d["ind_h1"] = c.ind_h1;
    d["ind_h2"] = c.ind_h2;
    d["ind_m"] = c.ind_m;
    d["origin_order"] = c.origin_order;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Inverse scattering from two-point boundary data";

    static py::exception<Error> base(m, "PlasmaError");
    static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
    static py::exception<SolverError> solver(m, "SolverError", base.ptr());
    static py::exception<HypothesisError> hypothesis(m, "HypothesisError", base.ptr());
    static py::exception<AccuracyError> accuracy(m, "AccuracyError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const HypothesisError& e) {
            py::object err = py::handle(hypothesis.ptr())(e.what());
            err.attr("index") = e.index();
            err.attr("exit_code") = e.exit_code();
            PyErr_SetObject(hypothesis.ptr(), err.ptr());
        } catch (const ConfigError& e) {
            py::set_error(config, e.what());
        } catch (const SolverError& e) {
            py::set_error(solver, e.what());
        } catch (const AccuracyError& e) {
            py::set_error(accuracy, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def(
        "sample_potential",
        [](const std::string& family, const FamilyParams& params, int n_x) {
            return to_array(sample_potential(family, params, n_x).samples());
        },
        py::arg("family"), py::arg("params") = FamilyParams{}, py::arg("n_x") = 401,
        "Samples of a test potential on n_x uniform nodes over [-1, 1].");

    m.def(
        "kgrid",
        [](double k_min, double k_max, int n_k) { return to_array(build_kgrid(k_min, k_max, n_k).values()); },
        py::arg("k_min") = 0.05, py::arg("k_max") = 60.0, py::arg("n_k") = 4096);

    m.def(
        "forward",
        [](const RealArray& q, const RealArray& k, double floor) {
            const Potential pot(to_vector(q));
            const KGrid grid(to_vector(k), floor);
            std::optional<ScatteringCoefficients> sc;
            {
                py::gil_scoped_release release;
                sc = scattering_coefficients(pot, grid);
            }
            const BoundaryData data = boundary_data(*sc);
            py::dict d;
            d["k"] = to_array(sc->grid.values());
            d["a"] = to_array(sc->a);
            d["b"] = to_array(sc->b);
            d["u_minus"] = to_array(data.u_minus);
            d["u_plus"] = to_array(data.u_plus);
            d["unitarity_defect"] = sc->unitarity_defect;
            return d;
        },
        py::arg("q"), py::arg("k"), py::arg("k_min_floor") = kDefaultKMinFloor,
        "Scattering coefficients a, b and boundary data u(-1,k), u(1,k) for potential samples q.");

    m.def(
        "recover_spectrum",
        [](const RealArray& k, const ComplexArray& u_minus, const ComplexArray& u_plus, double floor) {
            const BoundaryData data = boundary(k, u_minus, u_plus, floor);
            RecoveredSpectrum s;
            {
                py::gil_scoped_release release;
                s = recover_spectrum(data);
            }
            py::dict d;
            d["a"] = samples_dict(s.a);
            d["b"] = samples_dict(s.b);
            d["r"] = samples_dict(s.r);
            d["indices"] = indices(s.coefficients);
            d["residual"] = s.residual;
            d["cross_check_residual"] = s.cross_check_residual;
            d["analyticity_defect"] = s.analyticity_defect;
            d["unitarity_defect"] = s.unitarity_defect;
            return d;
        },
        py::arg("k"), py::arg("u_minus"), py::arg("u_plus"), py::arg("k_min_floor") = kDefaultKMinFloor,
        "a, b and r on the symmetric grid from boundary data; raises HypothesisError if ind_m != 0.");

    m.def(
        "invert",
        [](const RealArray& k, const ComplexArray& u_minus, const ComplexArray& u_plus, int n_x, double floor) {
            const BoundaryData data = boundary(k, u_minus, u_plus, floor);
            Inversion inv;
            {
                py::gil_scoped_release release;
                inv = invert_data(data, n_x);
            }
            const Reconstruction& rec = inv.reconstruction;
            py::dict d;
            std::vector<double> x(rec.q.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = rec.q.node(i);
            d["x"] = to_array(x);
            d["q"] = to_array(rec.q.samples());
            d["leakage"] = rec.leakage;
            d["marchenko_residual"] = inv.kernel.max_residual;
            d["kernel_tail"] = inv.kernel.tail;
            d["riemann_residual"] = inv.spectrum.residual;
            d["indices"] = indices(inv.spectrum.coefficients);
            return d;
        },
        py::arg("k"), py::arg("u_minus"), py::arg("u_plus"), py::arg("n_x") = 401,
        py::arg("k_min_floor") = kDefaultKMinFloor, "Reconstruct q on n_x nodes over [-1, 1] from boundary data.");

    m.def(
        "diagnose",
        [](const RealArray& q, const RealArray& k, double floor) {
            const Potential pot(to_vector(q));
            const KGrid grid(to_vector(k), floor);
            SpectrumReport rep;
            {
                py::gil_scoped_release release;
                rep = diagnose(pot, grid);
            }
            return py::module_::import("json").attr("loads")(to_json(rep).dump());
        },
        py::arg("q"), py::arg("k"), py::arg("k_min_floor") = kDefaultKMinFloor,
        "Bound states, variational minima, winding indices and norming constants.");

    m.def(
        "relative_l2_error",
        [](const RealArray& estimate, const RealArray& truth) {
            return relative_l2_error(Potential(to_vector(estimate)), Potential(to_vector(truth)));
        },
        py::arg("estimate"), py::arg("truth"));
}
