#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "katolab/asymptotics.hpp"
#include "katolab/config.hpp"
#include "katolab/error.hpp"
#include "katolab/experiment.hpp"
#include "katolab/models.hpp"
#include "katolab/operator_core.hpp"
#include "katolab/perturbation.hpp"
#include "katolab/projections.hpp"
#include "katolab/temple_kato.hpp"

namespace py = pybind11;
using namespace katolab;

namespace {

OrthogonalProjection projection(const CMatrix& m) { return OrthogonalProjection::from_matrix(m); }

std::string run_config_text(const std::string& subcommand, const std::string& text) {
  ExperimentConfig config = make_config(subcommand, parse_config_text(text));
  apply_seed_override(config);
  py::gil_scoped_release release;
  if (sweep_axis(config)) return to_json(sweep(config)).dump(2);
  return to_json(run(config)).dump(2);
}

}  // namespace

PYBIND11_MODULE(_katolab, m) {
  m.doc() = "C++ core of katolab";
  m.attr("__version__") = version();
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "eigh",
      [](const CMatrix& h) {
        const auto sd = eig(HermitianMatrix(h));
        return py::make_tuple(sd.eigenvalues, sd.vectors, sd.clusters);
      },
      py::arg("h"), "Eigenvalues (ascending), eigenvectors and degeneracy clusters.");
  m.def(
      "reduced_resolvent", [](const CMatrix& h, double e0) { return reduced_resolvent(HermitianMatrix(h), e0).matrix(); },
      py::arg("h"), py::arg("e0"));

  m.def(
      "rs_series",
      [](const CMatrix& h0, const CMatrix& b, Index index, int order) {
        return rs_series(HermitianMatrix(h0), HermitianMatrix(b), index, order).E;
      },
      py::arg("h0"), py::arg("b"), py::arg("index") = 0, py::arg("order") = 6,
      "Energy coefficients E_0..E_order of H0 + beta B.");

  m.def(
      "temple_enclosure",
      [](const CMatrix& h, const CVector& phi, double alpha, double zeta) {
        const auto r = enclosure(HermitianMatrix(h), phi, alpha, zeta);
        return py::make_tuple(r.gamma0, r.kappa0);
      },
      py::arg("h"), py::arg("phi"), py::arg("alpha"), py::arg("zeta"), "Lower and upper ends of the enclosure.");
  m.def(
      "gap_bound", [](double eta, double eps, double delta) { return eigenvector_gap_bound(eta, eps, delta).bound; },
      py::arg("eta"), py::arg("eps"), py::arg("delta"));

  m.def(
      "trace_index", [](const CMatrix& p, const CMatrix& q) { return trace_index(projection_pair(projection(p), projection(q))); },
      py::arg("p"), py::arg("q"));
  m.def(
      "kato_unitary", [](const CMatrix& p, const CMatrix& q) { return kato_unitary(projection_pair(projection(p), projection(q))); },
      py::arg("p"), py::arg("q"), "Unitary U with U P U* = Q.");
  m.def(
      "corner_subspaces",
      [](const CMatrix& p, const CMatrix& q) {
        const auto c = corner_subspaces(projection(p), projection(q));
        return py::make_tuple(c.p_kerq, c.kerp_q, c.p_q, c.kerq_kerp);
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "pade",
      [](const std::vector<double>& a, int n, int mdeg) {
        const auto r = pade(PowerSeries(a), n, mdeg);
        return py::make_tuple(r.p, r.q);
      },
      py::arg("coeffs"), py::arg("n"), py::arg("m"), "Numerator and denominator coefficients.");
  m.def(
      "borel_sum",
      [](const std::vector<double>& a, double z, int order_m, const std::string& continuation) {
        require(continuation == "pade" || continuation == "taylor", "continuation must be pade or taylor");
        return borel_sum(PowerSeries(a), z, order_m, continuation == "pade" ? Continuation::pade : Continuation::taylor).value;
      },
      py::arg("coeffs"), py::arg("z"), py::arg("order_m") = 1, py::arg("continuation") = "pade");
  m.def(
      "quartic_coefficients", [](int n, int basis) { return bender_wu(n, basis > 0 ? basis : 4 * n + 8).coeffs(); }, py::arg("n"),
      py::arg("basis_size") = 0, "Ground-state energy coefficients of the quartic oscillator.");
  m.def(
      "lie_trotter_error",
      [](const CMatrix& a, const CMatrix& b, double t, int n) {
        return lie_trotter_error(HermitianMatrix(a), HermitianMatrix(b), t, n);
      },
      py::arg("a"), py::arg("b"), py::arg("t"), py::arg("n"));

  m.def(
      "helium_shells",
      [](double mass_ratio) {
        const auto s = helium_shells(mass_ratio);
        py::dict d;
        d["unbounded"] = s.unbounded;
        d["k_max"] = s.k_max;
        d["count"] = s.count;
        d["alpha"] = s.alpha;
        return d;
      },
      py::arg("mass_ratio") = kAlphaParticleMassRatio);
  m.def("wvn_potential", py::overload_cast<double>(&wvn_potential), py::arg("r"));
  m.def("hardy_constant", &hardy_constant, py::arg("nu"), py::arg("R") = 1e4, py::arg("n") = 4000,
        py::arg("r_min") = 1e-20);
  m.def("rellich_constant", &rellich_constant, py::arg("nu"), py::arg("R") = 1e4, py::arg("n") = 4000,
        py::arg("r_min") = 1e-20);
  m.def(
      "rank_one_eigenvalue",
      [](double beta, const std::string& kind) { return rank_one_eigenvalue(beta, rank_one_kind_from_string(kind)); },
      py::arg("beta"), py::arg("kind") = "inv_sqrt");

  m.def("run_config_text", &run_config_text, py::arg("subcommand"), py::arg("text"),
        "Run an experiment from key = value text; returns the JSON record.");
}
