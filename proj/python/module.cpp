// Python bindings for the pieces a notebook session actually wants: the
// measure constants, the two gasket spectrum routes, the root scan, and the
// zeta evaluations.  Everything heavy stays in the C++ library; this file
// only converts types.  ZetaValue comes back as a plain dict so the Python
// side is not coupled to the struct layout.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracspec/hyperfunction.hpp"
#include "fracspec/ifs_measure.hpp"
#include "fracspec/renorm_dynamics.hpp"
#include "fracspec/sg_decimation.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/sturm_liouville.hpp"
#include "fracspec/zeta_engine.hpp"
#include "fracspec/zeta_value.hpp"

namespace py = pybind11;
using namespace fracspec;

namespace {

py::dict zeta_dict(const ZetaValue& z) {
  py::dict d;
  d["s"] = z.s;
  d["value"] = z.value;
  d["partial_sum"] = z.partial_sum;
  d["terms_used"] = z.terms_used;
  d["tail_estimate"] = z.tail_estimate;
  d["method"] = to_string(z.method);
  return d;
}

py::list spectrum_pairs(const SpectrumList& s) {
  py::list out;
  for (const auto& e : s.entries)
    out.append(py::make_tuple(e.value, e.multiplicity));
  return out;
}

}  // namespace

PYBIND11_MODULE(_fracspec, m) {
  m.doc() =
      "spectra of fractal Laplacians and self-similar string operators, "
      "with the zeta-function factorizations between them";

  // ---- measure ------------------------------------------------------------
  py::class_<SLConstants>(m, "SLConstants")
      .def_readonly("alpha", &SLConstants::alpha)
      .def_readonly("b", &SLConstants::b)
      .def_readonly("delta", &SLConstants::delta)
      .def_readonly("gamma", &SLConstants::gamma)
      .def("__repr__", [](const SLConstants& c) {
        return "SLConstants(alpha=" + std::to_string(c.alpha) +
               ", delta=" + std::to_string(c.delta) +
               ", gamma=" + std::to_string(c.gamma) + ")";
      });
  m.def("make_constants", &make_constants, py::arg("alpha"),
        "derived constants of the two-map IFS measure; alpha in (0, 1/2]");

  py::class_<MeasureGrid>(m, "MeasureGrid")
      .def_readonly("level", &MeasureGrid::level)
      .def_readonly("points", &MeasureGrid::points)
      .def_readonly("masses", &MeasureGrid::masses);
  m.def("build_grid", &build_grid, py::arg("n"), py::arg("constants"),
        "atomic level-n approximation of the measure (moment-exact split)");

  // ---- gasket -------------------------------------------------------------
  m.def(
      "decimation_spectrum",
      [](int level) { return spectrum_pairs(decimation_spectrum(level)); },
      py::arg("level"),
      "Dirichlet eigenvalues of the level-m gasket graph by the preimage "
      "recursion, as (value, multiplicity) pairs");
  m.def(
      "eigensolve_direct",
      [](int level) { return spectrum_pairs(eigensolve_direct(level)); },
      py::arg("level"), "same spectrum by dense symmetric eigensolve");
  m.def("scaled_branch_limit", &scaled_branch_limit, py::arg("z"),
        "renormalized limit of the contracting inverse branch");
  m.def(
      "sg_zeta_direct",
      [](cplx s, int L_max, double C_norm) {
        return zeta_dict(sg_zeta_direct(s, L_max, C_norm));
      },
      py::arg("s"), py::arg("L_max") = 8, py::arg("C_norm") = 1.0);
  m.def(
      "sg_zeta_factorized",
      [](cplx s) { return zeta_dict(sg_zeta_factorized(s)); }, py::arg("s"));

  // ---- string operators ---------------------------------------------------
  py::class_<GeneratingSet>(m, "GeneratingSet")
      .def_readonly("values", &GeneratingSet::values)
      .def_readonly("constants", &GeneratingSet::constants)
      .def_readonly("level", &GeneratingSet::level)
      .def_readonly("min_rel_gap", &GeneratingSet::min_rel_gap)
      .def_readonly("max_gap_ratio", &GeneratingSet::max_gap_ratio)
      .def_readonly("evaluations", &GeneratingSet::evaluations);
  m.def("generating_set", &generating_set, py::arg("k"), py::arg("constants"),
        py::arg("level"),
        "first k roots of the secular function (the set S whose gamma-power "
        "scalings make up every H_n spectrum)");
  m.def(
      "eigensolve_H0_oracle",
      [](int k, int level, const SLConstants& c) {
        return spectrum_pairs(eigensolve_H0_oracle(k, level, c));
      },
      py::arg("k"), py::arg("level"), py::arg("constants"),
      "independent tridiagonal eigensolve of the discrete string");

  m.def(
      "zeta_S",
      [](const GeneratingSet& S, cplx s) { return zeta_dict(zeta_S(S, s)); },
      py::arg("S"), py::arg("s"), "zeta over the generating set alone");
  m.def(
      "zeta_rho",
      [](const GeneratingSet& S, cplx s) {
        return zeta_dict(zeta_rho(S, s));
      },
      py::arg("S"), py::arg("s"),
      "zeta over the full renormalized ladder, closed form");
  m.def("riemann_identity_check", &riemann_identity_check, py::arg("S"),
        py::arg("s"),
        "|pi^s zeta_rho(s) - zeta(s)| for the midpoint measure");

  // ---- projective dynamics ------------------------------------------------
  m.def(
      "rho_apply",
      [](std::array<cplx, 3> h, double delta) {
        return rho_apply(ProjPoint{h}, delta).normalized().h;
      },
      py::arg("point"), py::arg("delta"),
      "one step of the renormalization map, result normalized so the "
      "largest coordinate is 1");
  m.def(
      "basin_probe",
      [](std::array<cplx, 3> h, double delta, int max_iter) {
        OrbitReport r = basin_probe(ProjPoint{h}, delta, max_iter);
        py::dict d;
        d["outcome"] = std::string(to_string(r.outcome));
        d["steps"] = r.steps;
        d["terminal"] = r.terminal.normalized().h;
        return d;
      },
      py::arg("point"), py::arg("delta"), py::arg("max_iter") = 200,
      "iterate the map and classify where the orbit lands");

  // ---- fractal strings ----------------------------------------------------
  m.def("cantor_string_lengths", &cantor_string_lengths, py::arg("n_max"));
  m.def(
      "string_factorization",
      [](const std::vector<double>& lengths, int j_max, cplx s) {
        StringFactorizationReport r = string_factorization(lengths, j_max, s);
        py::dict d;
        d["direct"] = r.direct;
        d["direct_tail"] = r.direct_tail;
        d["factorized"] = r.factorized;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("lengths"), py::arg("j_max"), py::arg("s"),
      "frequency-side sum vs pi^{-s} zeta(s) zeta_L(s)");
}
