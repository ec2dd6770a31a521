// Python bindings: polynomials, the three provers, verify and certificate I/O.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cctype>

#include "exactsos/certificate.hpp"
#include "exactsos/newton.hpp"
#include "exactsos/provers.hpp"
#include "exactsos/sdpa.hpp"

namespace py = pybind11;
using namespace exactsos;

namespace {

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_fraction_string(q));
}

/// int, str ("p/q", "2^e") or anything with numerator/denominator.
Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw py::type_error("expected a rational, got bool");
  if (py::isinstance<py::int_>(h)) return Rational(Integer(py::str(h).cast<std::string>()));
  if (py::isinstance<py::str>(h)) {
    const std::string s = h.cast<std::string>();
    if (s.rfind("2^", 0) == 0) return pow2(std::stol(s.substr(2)));
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw py::value_error("not a rational: " + s);
    q.canonicalize();
    return q;
  }
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
    return Rational(Integer(py::str(h.attr("numerator")).cast<std::string>()),
                    Integer(py::str(h.attr("denominator")).cast<std::string>()));
  throw py::type_error("expected int, str or Fraction");
}

/// nvars == 0 means: the largest variable index mentioned in the text.
Polynomial to_poly(const py::handle& h, std::size_t nvars) {
  if (py::isinstance<Polynomial>(h)) return h.cast<Polynomial>();
  const std::string text = h.cast<std::string>();
  if (nvars == 0) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != 'x') continue;
      std::size_t j = i + 1, v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = 10 * v + (text[j++] - '0');
      nvars = std::max(nvars, v);
    }
    nvars = std::max<std::size_t>(nvars, 1);
  }
  return parse_polynomial(text, nvars);
}

ProverConfig make_config(const py::kwargs& kw) {
  ProverConfig cfg;
  for (const auto& [k, v] : kw) {
    const std::string key = py::str(k);
    if (key == "eps")
      cfg.eps0 = to_rational(v);
    else if (key == "delta")
      cfg.delta = v.cast<long>();
    else if (key == "R")
      cfg.R = to_rational(v);
    else if (key == "delta_c")
      cfg.delta_c = v.cast<long>();
    else if (key == "max_eps_halvings")
      cfg.max_eps_halvings = v.cast<int>();
    else if (key == "max_escalations")
      cfg.max_escalations = v.cast<int>();
    else if (key == "k_max")
      cfg.k_max = v.cast<std::uint32_t>();
    else if (key == "D_max")
      cfg.D_max = v.cast<std::uint32_t>();
    else
      throw py::type_error("unknown option '" + key + "'");
  }
  return cfg;
}

py::dict stats_dict(const RunStats& st) {
  py::dict d;
  d["timings_ms"] = py::dict(py::arg("polytope") = st.polytope_ms, py::arg("sdp") = st.sdp_ms,
                             py::arg("cholesky") = st.cholesky_ms, py::arg("absorb") = st.absorb_ms,
                             py::arg("verify") = st.verify_ms);
  d["eps"] = to_fraction(st.final_eps);
  d["delta"] = st.final_delta;
  d["R"] = to_fraction(st.final_R);
  d["delta_c"] = st.final_delta_c;
  d["degree"] = st.final_degree;
  d["eps_halvings"] = st.eps_halvings;
  d["escalations"] = st.escalations;
  d["sdp_calls"] = st.sdp_calls;
  return d;
}

py::list terms_list(const std::vector<WeightedSquare>& terms) {
  py::list out;
  for (const auto& t : terms) out.append(py::make_tuple(to_fraction(t.weight), t.poly));
  return out;
}

// std::variant has its own pybind11 caster; a named wrapper keeps the type opaque.
struct PyCertificate {
  Certificate c;
};

const char* kind_name(const Certificate& c) {
  switch (c.index()) {
    case 0: return "sos";
    case 1: return "polya";
    default: return "putinar";
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact rational certificates of polynomial positivity";

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](const std::string& text, std::size_t nvars) { return parse_polynomial(text, nvars); }),
           py::arg("text"), py::arg("nvars"))
      .def_property_readonly("nvars", &Polynomial::nvars)
      .def_property_readonly("degree", &Polynomial::degree)
      .def("is_homogeneous", &Polynomial::is_homogeneous)
      .def("terms",
           [](const Polynomial& p) {
             py::list out;
             for (const auto& [a, c] : p.terms()) out.append(py::make_tuple(py::tuple(py::cast(a.values())), to_fraction(c)));
             return out;
           })
      .def("bitsize", [](const Polynomial& p) { return bitsize(p).value; })
      .def("__call__",
           [](const Polynomial& p, const py::sequence& pt) {
             std::vector<Rational> x;
             for (const auto& v : pt) x.push_back(to_rational(v));
             if (x.size() != p.nvars()) throw py::value_error("point has the wrong dimension");
             return to_fraction(p.evaluate(x));
           })
      .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
      .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
      .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
      .def("__mul__", [](const Polynomial& a, const py::object& c) { return a * to_rational(c); })
      .def("__rmul__", [](const Polynomial& a, const py::object& c) { return a * to_rational(c); })
      .def("__neg__", [](const Polynomial& a) { return -a; })
      .def("__pow__", [](const Polynomial& a, unsigned e) { return a.pow(e); })
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
      .def("__str__", [](const Polynomial& p) { return to_string(p); })
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + to_string(p) + "', " + std::to_string(p.nvars()) + ")"; });

  py::class_<PyCertificate>(m, "Certificate")
      .def_property_readonly("kind", [](const PyCertificate& w) { return kind_name(w.c); })
      .def_property_readonly("target", [](const PyCertificate& w) {
        return std::visit([](const auto& x) { return x.target; }, w.c);
      })
      .def_property_readonly("terms",
                             [](const PyCertificate& w) -> py::object {
                               if (auto* s = std::get_if<SosCertificate>(&w.c)) return terms_list(s->terms);
                               if (auto* p = std::get_if<PolyaCertificate>(&w.c)) return terms_list(p->inner.terms);
                               return py::none();
                             })
      .def_property_readonly("degree",
                             [](const PyCertificate& w) -> py::object {
                               if (auto* p = std::get_if<PolyaCertificate>(&w.c)) return py::int_(p->degree);
                               if (auto* u = std::get_if<PutinarCertificate>(&w.c)) return py::int_(2 * u->k);
                               return py::none();
                             })
      .def_property_readonly("sos_blocks",
                             [](const PyCertificate& w) -> py::object {
                               auto* u = std::get_if<PutinarCertificate>(&w.c);
                               if (!u) return py::none();
                               py::list out;
                               for (const auto& b : u->sos_blocks) out.append(terms_list(b));
                               return out;
                             })
      .def_property_readonly("aux",
                             [](const PyCertificate& w) -> py::object {
                               auto* u = std::get_if<PutinarCertificate>(&w.c);
                               if (!u) return py::none();
                               py::list out;
                               for (const auto& [a, w] : u->aux)
                                 out.append(py::make_tuple(py::tuple(py::cast(a.values())), to_fraction(w)));
                               return out;
                             })
      .def("bitsize", [](const PyCertificate& w) { return bitsize(w.c).value; })
      .def("to_json", [](const PyCertificate& w) { return serialize(w.c); })
      .def_static("from_json", [](const std::string& text) { return PyCertificate{deserialize(text)}; })
      .def("__eq__", [](const PyCertificate& a, const PyCertificate& b) { return a.c == b.c; });

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("passed", &VerifyReport::pass)
      .def_readonly("identity_ok", &VerifyReport::identity_ok)
      .def_readonly("weights_nonnegative", &VerifyReport::weights_nonnegative)
      .def_readonly("degree_ok", &VerifyReport::degree_ok)
      .def_readonly("aux_ok", &VerifyReport::aux_ok)
      .def_readonly("residual", &VerifyReport::residual)
      .def_readonly("problems", &VerifyReport::problems)
      .def("__bool__", [](const VerifyReport& r) { return r.pass; });

  // Module-lifetime exception types (intentionally never released).
  static PyObject* prover_error = PyErr_NewException("exactsos._core.ProverError", PyExc_RuntimeError, nullptr);
  static PyObject* parse_error = PyErr_NewException("exactsos._core.ParseError", PyExc_ValueError, nullptr);
  static PyObject* schema_error = PyErr_NewException("exactsos._core.SchemaError", PyExc_ValueError, nullptr);
  m.attr("ProverError") = py::handle(prover_error);
  m.attr("ParseError") = py::handle(parse_error);
  m.attr("SchemaError") = py::handle(schema_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ProverError& e) {
      py::object err = py::reinterpret_borrow<py::object>(prover_error)(e.what());
      err.attr("kind") = to_string(e.kind());
      PyErr_SetObject(prover_error, err.ptr());
    } catch (const ParseError& e) {
      PyErr_SetString(parse_error, e.what());
    } catch (const SchemaError& e) {
      PyErr_SetString(schema_error, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "intsos",
      [](const py::object& f, std::size_t nvars, const py::kwargs& kw) {
        RunStats st;
        Certificate c = intsos(to_poly(f, nvars), make_config(kw), &st);
        return py::make_tuple(PyCertificate{std::move(c)}, stats_dict(st));
      },
      py::arg("f"), py::arg("nvars") = 0,
      "Weighted rational SOS certificate of f. Returns (certificate, stats).");
  m.def(
      "polyasos",
      [](const py::object& f, std::size_t nvars, const py::kwargs& kw) {
        RunStats st;
        Certificate c = polyasos(to_poly(f, nvars), make_config(kw), &st);
        return py::make_tuple(PyCertificate{std::move(c)}, stats_dict(st));
      },
      py::arg("f"), py::arg("nvars") = 0,
      "Certificate for f * (x1^2 + ... + xn^2)^D with the smallest D found. Returns (certificate, stats).");
  m.def(
      "putinarsos",
      [](const py::object& f, const std::vector<py::object>& constraints, std::size_t nvars, const py::kwargs& kw) {
        Polynomial fp = to_poly(f, nvars);
        SemialgebraicSet s;
        for (const auto& g : constraints) s.constraints.push_back(to_poly(g, fp.nvars()));
        RunStats st;
        Certificate c = putinarsos(fp, s, make_config(kw), &st);
        return py::make_tuple(PyCertificate{std::move(c)}, stats_dict(st));
      },
      py::arg("f"), py::arg("constraints"), py::arg("nvars") = 0,
      "Putinar representation of f over the constraint set. Returns (certificate, stats).");
  m.def("verify", [](const PyCertificate& w) { return verify(w.c); }, py::arg("certificate"));
  m.def(
      "export_sdpa",
      [](const py::object& f, std::size_t nvars, const py::object& eps) {
        const Polynomial fp = to_poly(f, nvars);
        const HalfBasis b = half_lattice_points(newton_polytope(fp));
        const Polynomial fe = fp - to_rational(eps) * sum_of_even_monomials(b.points, fp.nvars());
        return export_sdpa(build_gram_problem(fe, b));
      },
      py::arg("f"), py::arg("nvars") = 0, py::arg("eps") = 0,
      "Sparse SDPA text of the Gram problem of f - eps*t over the half Newton polytope.");
}
