#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dirac/io.hpp"
#include "dirac/weyl.hpp"

namespace py = pybind11;
using namespace dirac;

namespace {

py::dict asymptotics_dict(const AsymptoticsReport& rep) {
  py::list k, rho, cerr, lr, lq;
  for (const AsymptoticsRow& row : rep.rows) {
    k.append(row.k);
    rho.append(row.rho_norm);
    cerr.append(row.c_err);
    lr.append(row.lmin_R);
    lq.append(row.lmin_Q);
  }
  py::dict d;
  d["k"] = k;
  d["rho_norm"] = rho;
  d["c_err"] = cerr;
  d["lmin_R"] = lr;
  d["lmin_Q"] = lq;
  d["kappa_R"] = rep.kappa_R;
  if (rep.kappa_Q.size() > 0) d["kappa_Q"] = rep.kappa_Q;
  d["lmin_F"] = rep.lmin_F;
  d["epsilon_gap"] = rep.epsilon_gap;
  d["q_route_available"] = rep.q_route_available;
  d["diagonalizable"] = rep.diagonalizable;
  d["first_k_small_rho"] = rep.first_k_small_rho;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "direct and inverse spectral transforms for discrete Dirac systems";

  static py::exception<InputError> exc_input(mod, "InputError");
  static py::exception<Error> exc_math(mod, "MathError");
  static py::exception<ToleranceError> exc_tol(mod, "ToleranceFailure");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      exc_input(e.what());
    } catch (const Error& e) {
      exc_math(e.what());
    } catch (const ToleranceError& e) {
      exc_tol(e.what());
    }
  });

  py::class_<AdmissibleTriple>(mod, "Triple")
      .def_readonly("n", &AdmissibleTriple::n)
      .def_property_readonly("m1", [](const AdmissibleTriple& t) { return t.sig.m1; })
      .def_property_readonly("m2", [](const AdmissibleTriple& t) { return t.sig.m2; })
      .def_readonly("A", &AdmissibleTriple::A)
      .def_readonly("S0", &AdmissibleTriple::S0)
      .def_readonly("theta1", &AdmissibleTriple::theta1)
      .def_readonly("theta2", &AdmissibleTriple::theta2)
      .def_readonly("identity_residual", &AdmissibleTriple::identity_residual);

  mod.def("make_triple", &make_triple, py::arg("A"), py::arg("S0"),
          py::arg("theta1"), py::arg("theta2"), py::arg("tol") = 1e-9,
          "validate {A, S0, theta1, theta2} and return the triple");

  mod.def(
      "potential",
      [](const AdmissibleTriple& t, long k_max) { return potential(t, k_max); },
      py::arg("triple"), py::arg("k_max"), "C_0 .. C_{k_max}");

  mod.def(
      "weyl_eval",
      [](const AdmissibleTriple& t, Complex z) {
        return WeylEvaluator(t).eval(z);
      },
      py::arg("triple"), py::arg("z"), "Weyl function value phi(z)");

  mod.def(
      "realization",
      [](const AdmissibleTriple& t) {
        const Realization r = realization_from_triple(t);
        return py::make_tuple(r.Acal, r.B, r.Ccal);
      },
      py::arg("triple"), "state-space data (A_cal, B, C_cal) of psi");

  mod.def(
      "inverse_potential",
      [](const Mat& Acal, const Mat& B, const Mat& Ccal, long k_max) {
        const Realization r = make_realization(Acal, B, Ccal);
        const InverseResult res = inverse_problem(r, k_max);
        py::dict d;
        d["C"] = res.C;
        d["A"] = res.triple.A;
        d["S0"] = res.triple.S0;
        d["theta1"] = res.triple.theta1;
        d["theta2"] = res.triple.theta2;
        d["X"] = res.ric.X;
        d["weyl_agreement"] = res.weyl_agreement;
        return d;
      },
      py::arg("A_cal"), py::arg("B"), py::arg("C_cal"), py::arg("k_max"),
      "recover the potential and triple behind psi(z) = C_cal (zI - A_cal)^{-1} B");

  mod.def(
      "rho",
      [](const Mat& Ck, int m1, int m2) {
        return rho_from_potential(Ck, Signature{m1, m2});
      },
      py::arg("Ck"), py::arg("m1"), py::arg("m2"),
      "contraction coefficient of one potential entry");

  mod.def(
      "halmos",
      [](const Mat& rho, int m1, int m2) {
        return halmos_reconstruct(rho, Signature{m1, m2});
      },
      py::arg("rho"), py::arg("m1"), py::arg("m2"),
      "potential entry rebuilt from its coefficient");

  mod.def(
      "asymptotics",
      [](const AdmissibleTriple& t, long k_max, double rho_tol) {
        return asymptotics_dict(asymptotics_report(t, k_max, rho_tol));
      },
      py::arg("triple"), py::arg("k_max"), py::arg("rho_tol") = 1e-3,
      "decay telemetry over k = 0 .. k_max");

  mod.def(
      "triple_from_json", [](const std::string& s) { return triple_from_json_text(s); },
      py::arg("text"), "parse a triple JSON document");
  mod.def(
      "triple_to_json", [](const AdmissibleTriple& t) { return triple_to_json(t); },
      py::arg("triple"), "serialize a triple to JSON");
}
