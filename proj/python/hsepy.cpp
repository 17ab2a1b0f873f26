// Python bindings for the main operations. Instances cross the boundary as
// the JSON instance format; results come back as plain dicts, lists and
// strings (group ring elements rendered like "1 - [1]").

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hse/cli.hpp"
#include "hse/io.hpp"
#include "hse/oracle.hpp"

namespace py = pybind11;
using namespace hse;

namespace {

std::vector<std::string> ideal_basis(const IdealLattice& I) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < I.lattice().rank(); ++i)
    out.push_back(format_element(unflatten(I.group(), I.lattice().basis_row(i))[0]));
  return out;
}

py::dict invariants(const AbelianInvariants& A) {
  py::dict d;
  std::vector<std::string> t;
  for (const auto& x : A.torsion) t.push_back(x.get_str());
  d["torsion"] = t;
  d["free_rank"] = A.free_rank;
  return d;
}

const StrictComplex& strict_of(const InstanceFile& f) {
  if (!f.strict) throw std::invalid_argument("a strict complex is required");
  return f.C;
}

LambdaMap lambda_of(const InstanceFile& f) {
  return f.lambda ? *f.lambda : LambdaMap::canonical(f.G, f.spaces());
}

// X from 0-based basis indices of P, or from the file when omitted.
ZGMatrix x_of(const InstanceFile& f, const std::optional<std::vector<std::size_t>>& x) {
  if (!x) return f.X ? *f.X : ZGMatrix(f.G, f.d(), 0);
  ZGMatrix X(f.G, f.d(), x->size());
  for (std::size_t j = 0; j < x->size(); ++j) {
    if ((*x)[j] >= f.d()) throw std::out_of_range("basis index out of range");
    X((*x)[j], j) = ZG::one(f.G);
  }
  return X;
}

}  // namespace

PYBIND11_MODULE(hsepy, m) {
  m.doc() = "Higher special elements for complexes over integral group rings";

  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);

  py::class_<InstanceFile>(m, "Instance")
      .def_static("from_json", &parse_instance, py::arg("text"))
      .def("to_json", &serialize_instance)
      .def_readonly("group", &InstanceFile::group)
      .def_readonly("strict", &InstanceFile::strict)
      .def_property_readonly("d", &InstanceFile::d)
      .def_readonly("description", &InstanceFile::description);

  m.def(
      "generate",
      [](std::vector<int> group, std::size_t d, std::size_t a, unsigned seed, bool three_term) {
        oracle::InstanceSpec spec;
        spec.seed = seed;
        spec.group = group;
        spec.d = d;
        spec.a = a;
        spec.x_kind = a > 0 ? oracle::XKind::separable : oracle::XKind::none;
        if (three_term) spec.shape = oracle::Shape::three_term;
        oracle::Instance I = oracle::random_instance(spec);
        InstanceFile f;
        f.group = I.G.factors();
        f.G = I.G;
        f.strict = I.strict.has_value();
        if (f.strict) f.C = *I.strict;
        else f.three = *I.three;
        f.lambda = I.lambda;
        f.X = I.X;
        f.seed = seed;
        return f;
      },
      py::arg("group"), py::arg("d") = 2, py::arg("a") = 0, py::arg("seed") = 1, py::arg("three_term") = false);

  m.def("cohomology", [](const InstanceFile& f) {
    CohomologyData H = f.strict ? cohomology(f.C) : cohomology(f.three);
    py::dict d;
    d["H1"] = invariants(H.H1.invariants());
    d["H2"] = invariants(H.H2.invariants());
    if (!f.strict) d["H3"] = invariants(H.H3.invariants());
    d["ranks"] = H.ranks;
    return d;
  });

  m.def(
      "fitting_ideal",
      [](const InstanceFile& f, int a) {
        CohomologyData H = f.strict ? cohomology(f.C) : cohomology(f.three);
        return ideal_basis(fitting_ideal(H.H2_presented, a));
      },
      py::arg("instance"), py::arg("a"));

  m.def(
      "eta",
      [](const InstanceFile& f, std::optional<std::vector<std::size_t>> x) {
        const StrictComplex& C = strict_of(f);
        ZGMatrix X = x_of(f, x);
        LambdaMap lam = lambda_of(f);
        QG L = theta_det(C, lam).u;
        SpecialElement se = special_element(C, lam, L, X);
        std::vector<std::string> coords;
        for (const auto& c : se.eta) coords.push_back(format_element(c));
        py::dict d;
        d["a"] = se.a;
        d["L"] = format_element(L);
        d["eta"] = coords;
        d["I_eta"] = ideal_basis(evaluation_lattice(se.eta, *cohomology(C).H1_lattice, se.a));
        return d;
      },
      py::arg("instance"), py::arg("x") = py::none());

  m.def(
      "check_charels",
      [](const InstanceFile& f, std::optional<std::vector<std::size_t>> x) {
        const StrictComplex& C = strict_of(f);
        LambdaMap lam = lambda_of(f);
        CharelsReport R = check_charels(C, lam, theta_det(C, lam).u, x_of(f, x), f.x_element);
        py::dict d;
        d["a"] = R.a;
        d["separable"] = R.separable;
        d["fit_inclusion"] = R.fit_inclusion;
        d["ann_inclusion"] = R.ann_inclusion;
        d["fit_equality"] = R.fit_equality;
        d["x_eta_integral"] = R.x_eta_integral;
        d["ok"] = R.ok();
        d["I_eta"] = ideal_basis(R.I_eta);
        d["fit"] = ideal_basis(R.fit);
        return d;
      },
      py::arg("instance"), py::arg("x") = py::none());

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI subcommand; returns (exit code, report, diagnostics).");
}
