#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tiltlab/abgrp.hpp"
#include "tiltlab/acceptance.hpp"
#include "tiltlab/ahdetect.hpp"
#include "tiltlab/error.hpp"
#include "tiltlab/exring73.hpp"
#include "tiltlab/heart.hpp"
#include "tiltlab/torsion.hpp"

namespace py = pybind11;
using namespace tiltlab;

namespace {

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Integer from_py(const py::int_& x) { return Integer(py::str(x).cast<std::string>()); }

IntMatrix matrix_from_py(const std::vector<std::vector<py::int_>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = from_py(rows[r][c]);
  }
  return m;
}

py::list matrix_to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    rows.append(row);
  }
  return rows;
}

PrimeSet primes(const std::vector<unsigned long>& q) { return PrimeSet(q); }

py::list names_of(const HomQuiver& q, const VertexSet& s) {
  py::list out;
  for (std::size_t i : s) out.append(q.vertex(i).name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations with tilted hearts over the integers";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error"));
  py::register_exception<BoundExceeded>(m, "BoundExceeded", m.attr("Error"));
  py::register_exception<InvariantBreach>(m, "InvariantBreach", m.attr("Error"));

  m.attr("__version__") = version();

  m.def("smith_normal_form", [](const std::vector<std::vector<py::int_>>& rows) {
    SmithForm s = smith_normal_form(matrix_from_py(rows));
    py::dict d;
    d["d"] = matrix_to_py(s.d);
    d["u"] = matrix_to_py(s.u);
    d["v"] = matrix_to_py(s.v);
    d["rank"] = s.rank;
    return d;
  }, "u * m * v == d with d in Smith normal form");

  py::class_<FgAbGroup>(m, "Group")
      .def(py::init([](const std::string& text) { return FgAbGroup::parse(text); }), py::arg("text"))
      .def_static("from_relations", [](const std::vector<std::vector<py::int_>>& rows) { return cokernel_group(matrix_from_py(rows)); })
      .def_property_readonly("rank", &FgAbGroup::rank)
      .def_property_readonly("torsion", [](const FgAbGroup& g) {
        py::list out;
        for (const auto& d : g.torsion()) out.append(to_py(d));
        return out;
      })
      .def_property_readonly("order", [](const FgAbGroup& g) -> py::object {
        if (!g.is_finite()) return py::none();
        return to_py(g.order());
      })
      .def("is_zero", &FgAbGroup::is_zero)
      .def("__eq__", [](const FgAbGroup& a, const FgAbGroup& b) { return a == b; })
      .def("__str__", &FgAbGroup::to_string)
      .def("__repr__", [](const FgAbGroup& g) { return "Group('" + g.to_string() + "')"; });

  m.def("hom_group", [](const FgAbGroup& a, const FgAbGroup& b) { return hom_group(a, b).group(); });
  m.def("ext_group", [](const FgAbGroup& t, const FgAbGroup& f) { return ext_group(t, f).group(); });
  m.def("brute_force_hom_count", [](const FgAbGroup& a, const FgAbGroup& b, const py::int_& bound) {
    return to_py(brute_force_hom_count(a, b, from_py(bound)));
  }, py::arg("a"), py::arg("b"), py::arg("bound") = 10000);
  m.def("canonical_ses", [](const std::vector<unsigned long>& q, const FgAbGroup& g) {
    TorsionSequence s = canonical_ses(primes(q), g);
    return py::make_tuple(s.t, s.f);
  }, "(t, f) with t in X_Q and f in Y_Q");

  py::class_<HeartObject>(m, "HeartObject")
      .def(py::init([](const std::vector<unsigned long>& q, const FgAbGroup& f, const FgAbGroup& t) {
        return HeartObject(primes(q), f, t);
      }), py::arg("q"), py::arg("f"), py::arg("t"))
      .def_property_readonly("f", &HeartObject::f)
      .def_property_readonly("t", &HeartObject::t)
      .def("is_zero", &HeartObject::is_zero)
      .def("__eq__", [](const HeartObject& a, const HeartObject& b) { return a == b; })
      .def("__str__", &HeartObject::to_string);

  py::class_<HeartMorphism>(m, "HeartMorphism")
      .def_static("identity", &HeartMorphism::identity)
      .def_static("zero", &HeartMorphism::zero)
      .def_static("multiplication", [](const HeartObject& x, const py::int_& n) {
        Integer k = from_py(n);
        return HeartMorphism(x, x, GroupHom::scalar(x.f(), k), GroupHom::scalar(x.t(), k), ExtElement::zero(x.t(), x.f()));
      })
      .def_static("from_coordinates", [](const HeartObject& x, const HeartObject& y, const std::vector<py::int_>& c) {
        IntVector v;
        for (const auto& e : c) v.push_back(from_py(e));
        return HeartHomSpace(x, y).morphism(v);
      })
      .def_property_readonly("source", &HeartMorphism::source)
      .def_property_readonly("target", &HeartMorphism::target)
      .def("is_zero", &HeartMorphism::is_zero)
      .def("__eq__", [](const HeartMorphism& a, const HeartMorphism& b) { return a == b; });

  m.def("compose", py::overload_cast<const HeartMorphism&, const HeartMorphism&>(&compose), "g o f");
  m.def("hom_space", [](const HeartObject& x, const HeartObject& y) { return HeartHomSpace(x, y).group(); });
  m.def("ext1_space", [](const HeartObject& x, const HeartObject& y) { return ext1_space(x, y).group; });
  m.def("ext2_space", [](const HeartObject& x, const HeartObject& y) {
    Ext2Space e = ext2_space(x, y);
    return py::make_tuple(e.group, e.certificate);
  });
  m.def("kernel", [](const HeartMorphism& f) {
    KernelResult k = kernel(f);
    return py::make_tuple(k.object, k.mono);
  });
  m.def("cokernel", [](const HeartMorphism& f) {
    CokernelResult c = cokernel(f);
    return py::make_tuple(c.object, c.epi);
  });
  m.def("image", [](const HeartMorphism& f) {
    ImageResult i = image(f);
    return py::make_tuple(i.object, i.epi, i.mono);
  });
  m.def("is_mono", &is_mono);
  m.def("is_epi", &is_epi);
  m.def("is_ses", [](const HeartMorphism& f, const HeartMorphism& g) { return is_ses(f, g).exact; });
  m.def("embed_into_tilt", &embed_into_tilt);
  m.def("verify_tilting_object", [](const HeartObject& t0, const std::vector<HeartObject>& witnesses) {
    TiltingReport r = verify_tilting_object(t0, witnesses);
    py::dict d;
    d["passed"] = r.passed;
    d["endomorphisms"] = r.endomorphisms;
    py::list conds;
    for (const auto& c : r.conditions) conds.append(py::make_tuple(c.name, c.passed));
    d["conditions"] = conds;
    return d;
  });

  py::class_<HomQuiver>(m, "HomQuiver")
      .def_static("from_json", &HomQuiver::from_json)
      .def("to_json", &HomQuiver::to_json)
      .def_property_readonly("names", [](const HomQuiver& q) {
        py::list out;
        for (const auto& v : q.vertices()) out.append(v.name);
        return out;
      })
      .def("__len__", &HomQuiver::size)
      .def("__eq__", [](const HomQuiver& a, const HomQuiver& b) { return a == b; });

  m.def("detect", [](const HomQuiver& q) {
    TorsionPairOnQuiver tp = torsion_pair_x0y0(q);
    LRClasses lr = lr_classes(q);
    py::dict d;
    d["c"] = names_of(q, c_levels(q).closure);
    d["c_equals_c1"] = verify_c_equals_c1(q).passed;
    d["x0"] = names_of(q, tp.x);
    d["y0"] = names_of(q, tp.y);
    d["split_with_r_in_y0"] = check_condition_ii(q, tp).passed;
    d["almost_hereditary"] = check_condition_iii(q).passed;
    d["hom_to_r_zero"] = hom_to_r_check(q).passed;
    d["l"] = names_of(q, lr.l);
    d["r"] = names_of(q, lr.r);
    return d;
  }, "Runs the detection checks and returns their verdicts");
  m.def("split_torsion_pairs", [](const HomQuiver& q, std::size_t max_vertices) {
    py::list out;
    for (const auto& tp : enumerate_split_torsion_pairs(q, max_vertices)) out.append(py::make_tuple(names_of(q, tp.x), names_of(q, tp.y)));
    return out;
  }, py::arg("q"), py::arg("max_vertices") = 20);

  py::class_<TripleModule>(m, "TripleModule")
      .def_static("from_json", &TripleModule::from_json)
      .def_static("simple", &TripleModule::simple)
      .def_static("free", &TripleModule::free)
      .def_static("cyclic_torsion", &TripleModule::cyclic_torsion)
      .def_static("cyclic_hit", &TripleModule::cyclic_hit)
      .def("to_json", &TripleModule::to_json)
      .def_property_readonly("name", &TripleModule::name)
      .def("__eq__", [](const TripleModule& a, const TripleModule& b) { return a == b; })
      .def("__repr__", &TripleModule::name);

  m.def("direct_sum", &direct_sum);
  m.def("decompose", &decompose);
  m.def("reassembles", [](const TripleModule& x, const std::vector<TripleModule>& parts) { return reassemble(x, parts).isomorphic; });
  m.def("pd_triple", &pd_triple);
  m.def("injdim_triple", [](const TripleModule& x) { return injdim_triple(x).injdim; });
  m.def("hom_triples", [](const TripleModule& a, const TripleModule& b) { return hom_triples(a, b).group; });
  m.def("ext1_triples", &ext1_triples);
  m.def("enumerate_indecomposables", &enumerate_indecomposables, py::arg("p"), py::arg("bound"));
  m.def("to_homquiver", &to_homquiver, py::arg("bound"), py::arg("p") = 2);

  m.def("selftest", [](const std::string& depth, std::uint64_t seed) {
    Depth d = depth == "full" ? Depth::full : Depth::quick;
    if (depth != "full" && depth != "quick") throw ValidationError("depth must be quick or full");
    py::gil_scoped_release release;
    return acceptance_report(run_acceptance(d, seed)).render_json();
  }, py::arg("depth") = "quick", py::arg("seed") = kDefaultSeed, "JSON report of the acceptance suite");

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full = {"tiltlab"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the command-line tool in process: (exit code, stdout, stderr)");
}
