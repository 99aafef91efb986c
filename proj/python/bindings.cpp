// Python bindings for the main operations. Modules over prime fields can be built from
// nested lists of ints; anything else goes through the module file format.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pisupp/cli.hpp"
#include "pisupp/examples.hpp"
#include "pisupp/module_file.hpp"
#include "pisupp/support.hpp"
#include "pisupp/verify.hpp"

namespace py = pybind11;
using namespace pisupp;

namespace {

AlgebraSpec make_spec(unsigned p, unsigned r, const std::vector<std::string>& flavors) {
  auto spec = AlgebraSpec::uniform(p, r, Flavor::Group);
  if (flavors.size() == 1) {
    spec.flavors.assign(r, flavor_from_string(flavors[0]));
  } else if (flavors.size() == r) {
    for (unsigned i = 0; i < r; ++i) spec.flavors[i] = flavor_from_string(flavors[i]);
  } else {
    throw Error(ErrorKind::InvalidArgument, "give one flavor or one per generator");
  }
  return spec;
}

ModuleRep from_lists(const AlgebraSpec& spec, const std::vector<std::vector<std::vector<std::int64_t>>>& actions,
                     const std::string& name) {
  std::vector<Matrix> z;
  for (const auto& rows : actions) {
    const std::size_t n = rows.size();
    Matrix m(spec.base, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorKind::ValidationError, "generator matrices must be square");
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, FieldElement::from_int(spec.base, rows[i][j]));
    }
    z.push_back(std::move(m));
  }
  return ModuleRep(spec, std::move(z), name);
}

std::vector<std::vector<std::vector<std::int64_t>>> to_lists(const ModuleRep& m) {
  if (m.field()->extension_degree() != 1 || m.field()->has_transcendentals()) {
    throw Error(ErrorKind::InvalidArgument, "integer matrices are only available over prime fields");
  }
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  for (const auto& a : m.actions()) {
    std::vector<std::vector<std::int64_t>> rows(a.rows(), std::vector<std::int64_t>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a.code(i, j);
    out.push_back(std::move(rows));
  }
  return out;
}

PiPoint point_of(const ModuleRep& m, const std::string& literal, unsigned extension_degree) {
  auto coords = parse_point_literal(literal, m.field(), extension_degree);
  const auto field = coords[0].field();
  return PiPoint::make_linear(m.spec(), field, std::move(coords));
}

py::dict description_dict(const SupportDescription& d) {
  py::dict out;
  std::vector<std::pair<std::string, bool>> sampled;
  for (const auto& v : d.sampled) sampled.emplace_back(v.point.to_string(), v.in_support);
  out["sampled"] = sampled;
  std::vector<std::string> in;
  for (const auto& p : d.support_points()) in.push_back(p.to_string());
  out["closed_points"] = in;
  out["generic"] = d.generic_in_support ? py::cast(*d.generic_in_support) : py::none();
  out["report"] = d.report();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact pi-support and pi-cosupport of modules over elementary abelian group algebras";

  static py::exception<Error> error(mod, "PisuppError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(e.category()) + ": " + e.what()).c_str());
    }
  });

  py::class_<AlgebraSpec>(mod, "AlgebraSpec")
      .def(py::init(&make_spec), py::arg("p"), py::arg("r"), py::arg("flavors") = std::vector<std::string>{"group"})
      .def_readonly("p", &AlgebraSpec::p)
      .def_readonly("r", &AlgebraSpec::r)
      .def_property_readonly("flavors",
                             [](const AlgebraSpec& s) {
                               std::vector<std::string> out;
                               for (auto f : s.flavors) out.push_back(to_string(f));
                               return out;
                             })
      .def_property_readonly("field", [](const AlgebraSpec& s) { return s.base->name(); })
      .def("__eq__", [](const AlgebraSpec& a, const AlgebraSpec& b) { return a == b; })
      .def("__repr__", &AlgebraSpec::to_string);

  py::class_<ModuleRep>(mod, "Module")
      .def(py::init(&from_lists), py::arg("spec"), py::arg("actions"), py::arg("name") = "")
      .def_property_readonly("dim", &ModuleRep::dim)
      .def_property_readonly("name", &ModuleRep::name)
      .def_property_readonly("spec", &ModuleRep::spec)
      .def_property_readonly("actions", &to_lists)
      .def("__eq__", [](const ModuleRep& a, const ModuleRep& b) { return a == b; })
      .def("__repr__", [](const ModuleRep& m) {
        return "Module(" + (m.name().empty() ? std::string("unnamed") : m.name()) + ", dim " + std::to_string(m.dim()) +
               ", " + m.spec().to_string() + ")";
      });

  mod.def("klein_spec", &klein_spec);
  mod.def("klein_truncation", &klein_truncation, py::arg("n"));
  mod.def("example", [](const std::string& name, const AlgebraSpec& spec) { return load_module(name, spec); },
          py::arg("name"), py::arg("spec"), "An example name such as 'free:2' or 'klein-M3', or a module file path.");
  mod.def("free_module", &free_module, py::arg("spec"), py::arg("g") = 1);
  mod.def("trivial_module", &trivial_module, py::arg("spec"));
  mod.def("jordan_block_module", &jordan_block_module, py::arg("spec"), py::arg("u"));

  mod.def("direct_sum", &direct_sum);
  mod.def("tensor", &tensor);
  mod.def("hom", &hom);
  mod.def("dual", &dual);
  mod.def("is_free", &is_free);
  mod.def("is_projective", &is_projective);
  mod.def("validate", [](const ModuleRep& m) { return validate(m.spec(), m.actions()).ok(); });

  mod.def("emit_module_file", &emit_module_file);
  mod.def("parse_module_file", &parse_module_file);

  mod.def(
      "jordan_type",
      [](const ModuleRep& m, const std::string& point, unsigned extension_degree) {
        const auto alpha = point == "generic" ? generic_point(m.spec()) : point_of(m, point, extension_degree);
        return jordan_type(restrict(alpha, base_change(m, alpha.field())), m.spec().p).parts;
      },
      py::arg("module"), py::arg("point"), py::arg("extension_degree") = 1,
      "Jordan type at a point literal such as '0,1' or '1,w' (with extension_degree), or 'generic'.");
  mod.def(
      "in_support",
      [](const ModuleRep& m, const std::string& point, unsigned e) { return in_support(m, point_of(m, point, e)); },
      py::arg("module"), py::arg("point"), py::arg("extension_degree") = 1);
  mod.def(
      "in_cosupport",
      [](const ModuleRep& m, const std::string& point, unsigned e) {
        return in_cosupport(m, point_of(m, point, e)).in_cosupport;
      },
      py::arg("module"), py::arg("point"), py::arg("extension_degree") = 1);
  mod.def(
      "support_sample", [](const ModuleRep& m, unsigned e) { return description_dict(support_sample(m, e)); },
      py::arg("module"), py::arg("sample_degree") = 2);
  mod.def(
      "cosupport_sample", [](const ModuleRep& m, unsigned e) { return description_dict(cosupport_sample(m, e)); },
      py::arg("module"), py::arg("sample_degree") = 2);
  mod.def(
      "support_ideal",
      [](const ModuleRep& m) -> py::object {
        const auto d = support_ideal(m);
        if (d.ideal == SupportDescription::Ideal::Everything) return py::str("everything");
        std::vector<std::string> gens;
        for (const auto& g : d.generators) gens.push_back(g.to_string());
        return py::cast(gens);
      },
      "List of generator strings, or 'everything' when p does not divide the dimension.");

  mod.def(
      "verify",
      [](const std::string& suite, std::size_t trials, std::uint64_t seed, std::vector<unsigned> ps,
         std::vector<unsigned> rs, unsigned e_max) {
        VerifyOptions o;
        o.suite = suite;
        o.trials = trials;
        o.seed = seed;
        o.ps = std::move(ps);
        o.rs = std::move(rs);
        o.e_max = e_max;
        const auto r = run_verify(o);
        py::dict out;
        for (const auto& s : r.suites) out[py::str(s.suite)] = py::make_tuple(s.passed, s.failed);
        return py::make_tuple(r.ok(), out, r.to_string());
      },
      py::arg("suite") = "all", py::arg("trials") = 20, py::arg("seed") = 1, py::arg("ps") = std::vector<unsigned>{2},
      py::arg("rs") = std::vector<unsigned>{2}, py::arg("sample_degree") = 2,
      "Returns (ok, {suite: (passed, failed)}, report text).");

  mod.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command-line invocation; returns (exit code, stdout, stderr).");
}
