#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oqw/analysis.hpp"
#include "oqw/spectral.hpp"
#include "oqw/walk.hpp"

namespace py = pybind11;
using namespace oqw;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return CMatrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

ComplexArray to_array(const CMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

std::vector<cplx> to_vector(const ComplexArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
  return std::vector<cplx>(a.data(), a.data() + a.shape(0));
}

ComplexArray vector_to_array(std::span<const cplx> v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

DensityMatrix to_state(const ComplexArray& a) { return DensityMatrix(to_matrix(a)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Open quantum walk core: channel, spectrum, attractors and observables";

  py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<int, double, double, double>(), py::arg("n"), py::arg("eta"), py::arg("phi0"), py::arg("phi1"))
      .def_property_readonly("n", &ChannelParams::n)
      .def_property_readonly("eta", &ChannelParams::eta)
      .def_property_readonly("phi0", &ChannelParams::phi0)
      .def_property_readonly("phi1", &ChannelParams::phi1)
      .def_property_readonly("dim", &ChannelParams::dim)
      .def("__repr__", [](const ChannelParams& p) {
        return "ChannelParams(n=" + std::to_string(p.n()) + ", eta=" + std::to_string(p.eta()) +
               ", phi0=" + std::to_string(p.phi0()) + ", phi1=" + std::to_string(p.phi1()) + ")";
      });

  m.def(
      "product_state",
      [](int n, int x, const ComplexArray& coin) { return to_array(DensityMatrix::product(n, x, to_matrix(coin)).matrix()); },
      py::arg("n"), py::arg("x"), py::arg("coin"), "Density matrix |x><x| (x) coin, positions 1..n.");
  m.def("build_walk_unitary", [](int n) { return to_array(build_walk_unitary(n)); }, py::arg("n"));
  m.def("build_phase_unitary", [](const ChannelParams& p) { return to_array(build_phase_unitary(p)); });
  m.def("kraus_pair", [](const ChannelParams& p) {
    const auto k = kraus_pair(p);
    return py::make_tuple(to_array(k[0]), to_array(k[1]));
  });
  m.def(
      "channel_step", [](const ComplexArray& rho, const ChannelParams& p) { return to_array(channel_step(to_state(rho), p).matrix()); },
      py::arg("rho"), py::arg("params"));
  m.def(
      "evolve",
      [](const ComplexArray& rho0, const ChannelParams& p, int steps) {
        py::list out;
        for (const auto& r : evolve(to_state(rho0), p, steps)) out.append(to_array(r.matrix()));
        return out;
      },
      py::arg("rho0"), py::arg("params"), py::arg("steps"), "States rho(0..steps).");

  m.def("walk_eigenvalues", [](int n, int k) {
    const auto e = walk_eigenvalues(n, k);
    return py::make_tuple(e.plus, e.minus);
  });
  m.def(
      "dark_states",
      [](int n, int marked_coin) {
        py::list out;
        for (const auto& d : dark_states(n, marked_coin)) {
          py::dict item;
          item["k"] = d.k;
          item["sign"] = d.sign == Sign::plus ? "+" : "-";
          item["vector"] = vector_to_array(d.vector.amplitudes());
          item["eigenvalue"] = d.eigenvalue;
          out.append(item);
        }
        return out;
      },
      py::arg("n"), py::arg("marked_coin") = 0);
  m.def("classify_regime", [](const ChannelParams& p) { return to_string(classify_regime(p)); });
  m.def("attractor_basis", [](const ChannelParams& p) {
    const auto basis = attractor_basis(p);
    py::list ops;
    for (const auto& op : basis.operators) {
      py::dict item;
      item["label"] = op.label;
      item["eigenvalue"] = op.eigenvalue;
      item["op"] = to_array(op.op);
      ops.append(item);
    }
    return py::make_tuple(to_string(basis.regime), ops);
  });
  m.def(
      "asymptotic_state",
      [](const ComplexArray& rho0, const ChannelParams& p, long t) {
        return to_array(asymptotic_state(to_state(rho0), attractor_basis(p), t).matrix());
      },
      py::arg("rho0"), py::arg("params"), py::arg("t"));
  m.def(
      "verify_eigenoperator",
      [](const ComplexArray& x, cplx lambda, const ChannelParams& p) {
        return verify_eigenoperator(to_matrix(x), lambda, p).max();
      },
      py::arg("x"), py::arg("eigenvalue"), py::arg("params"));

  m.def("position_distribution", [](const ComplexArray& rho) { return position_distribution(to_state(rho)); });
  m.def("bloch_vector", [](const ComplexArray& rho) {
    const auto b = bloch_vector(to_state(rho));
    return py::make_tuple(b.x, b.y, b.z);
  });
  m.def("coin_purity", [](const ComplexArray& rho) { return coin_purity(to_state(rho)); });
  m.def("min_pt_eigenvalue", [](const ComplexArray& rho) { return min_pt_eigenvalue(to_state(rho)); });
  m.def("partial_transpose_coin",
        [](const ComplexArray& rho, int n) { return to_array(partial_transpose_coin(to_matrix(rho), n)); });
  m.def("trace_distance",
        [](const ComplexArray& a, const ComplexArray& b) { return trace_distance(to_matrix(a), to_matrix(b)); });
  m.def("three_cycle_asymptotics", [](const ComplexArray& rho0, const ChannelParams& p) {
    const auto a = three_cycle_asymptotics(to_state(rho0), p);
    py::dict out;
    out["p_plus"] = a.p_plus;
    out["p_minus"] = a.p_minus;
    out["kappa"] = a.kappa;
    out["Lambda"] = a.Lambda;
    out["omega"] = a.omega;
    return out;
  });
}
