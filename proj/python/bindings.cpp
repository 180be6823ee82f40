#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "omlbell/feasibility.hpp"
#include "omlbell/io.hpp"

namespace py = pybind11;
using namespace omlbell;

// Rational <-> fractions.Fraction. Accepts int, Fraction and rational strings; floats are rejected.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src || PyFloat_Check(src.ptr())) return false;
        if (PyBool_Check(src.ptr())) return false;
        try {
            if (py::isinstance<py::str>(src)) {
                value = parse_rational(src.cast<std::string>());
                return true;
            }
            if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
            std::string num = py::str(src.attr("numerator"));
            std::string den = py::str(src.attr("denominator"));
            value = Rational(num + "/" + den);
            value.canonicalize();
            return true;
        } catch (...) {
            return false;
        }
    }

    static handle cast(const Rational& v, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(v.get_str()).release();
    }
};
}  // namespace pybind11::detail

namespace {

using PyLattice = std::shared_ptr<Oml>;

PyLattice hold(Oml oml) { return std::make_shared<Oml>(std::move(oml)); }

PyLattice unconst(const LatticePtr& p) { return std::const_pointer_cast<Oml>(p); }

py::dict report_dict(const Oml& l, const InequalityReport& r) {
    py::dict d;
    d["ineq"] = std::string(to_string(r.id));
    std::vector<std::string> args;
    for (auto a : r.args) args.push_back(l.label(a));
    d["args"] = args;
    d["variant"] = r.variant;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["satisfied"] = r.satisfied;
    return d;
}

std::vector<ElementId> labels_to_ids(const Oml& l, const std::vector<std::string>& labels) {
    std::vector<ElementId> out;
    for (const auto& s : labels) out.push_back(l.at(s));
    return out;
}

SmapOptions options(bool commutative, const std::optional<State>& state) {
    SmapOptions o;
    o.commutative = commutative;
    o.fixed_state = state;
    return o;
}

py::object map_object(const AnyMap& m) {
    return std::visit([](const auto& v) { return py::cast(v); }, m);
}

}  // namespace

PYBIND11_MODULE(_omlbell, m) {
    m.doc() = "Finite orthomodular lattices, s-maps and Bell-type inequalities with exact arithmetic.";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", m.attr("Error").ptr());
    py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error").ptr());

    py::class_<Oml, PyLattice>(m, "Lattice")
        .def_static("boolean", [](std::size_t n) { return hold(build_boolean(n)); }, py::arg("atoms"))
        .def_static("mo", [](std::size_t n) { return hold(build_mo(n)); }, py::arg("n"))
        .def_static(
            "horizontal_sum",
            [](const std::vector<PyLattice>& parts) {
                std::vector<Oml> v;
                for (const auto& p : parts) v.push_back(*p);
                return hold(build_horizontal_sum(v));
            },
            py::arg("parts"))
        .def_static(
            "greechie",
            [](std::size_t atoms, std::vector<std::vector<std::size_t>> blocks) {
                return hold(build_from_greechie({atoms, std::move(blocks)}));
            },
            py::arg("atoms"), py::arg("blocks"))
        .def_static("named", [](const std::string& name) { return hold(named_lattice(name)); }, py::arg("name"))
        .def_static("from_json", [](const std::string& text) { return hold(parse_lattice(text)); }, py::arg("text"))
        .def("to_json", [](const Oml& l) { return serialize_lattice(l); })
        .def("__len__", &Oml::size)
        .def_property_readonly("labels", &Oml::labels)
        .def_property_readonly("top", &Oml::top)
        .def_property_readonly("bottom", &Oml::bottom)
        .def_property_readonly("atoms", &Oml::atoms)
        .def("index", &Oml::at, py::arg("label"))
        .def("label", &Oml::label, py::arg("element"))
        .def("leq", &Oml::leq)
        .def("meet", &Oml::meet)
        .def("join", &Oml::join)
        .def("ortho", &Oml::ortho)
        .def("orthogonal", &Oml::orthogonal)
        .def("compatible", &Oml::compatible)
        .def("__eq__", [](const Oml& a, const Oml& b) { return a == b; })
        .def("__repr__", [](const Oml& l) { return "<Lattice with " + std::to_string(l.size()) + " elements>"; });

    py::class_<State>(m, "State")
        .def(py::init([](const PyLattice& l, std::vector<Rational> v) { return State::make(l, std::move(v)); }),
             py::arg("lattice"), py::arg("values"))
        .def_property_readonly("lattice", [](const State& s) { return unconst(s.lattice_ptr()); })
        .def_property_readonly("values", &State::values)
        .def("__call__", [](const State& s, ElementId a) { return s(a); })
        .def("to_json", [](const State& s) { return serialize_map(s); });

    py::class_<SMap>(m, "SMap")
        .def(py::init([](const PyLattice& l, std::vector<Rational> v) { return SMap::make(l, std::move(v)); }),
             py::arg("lattice"), py::arg("values"))
        .def_static("classical", &classical_smap_from_state, py::arg("state"))
        .def_property_readonly("lattice", [](const SMap& p) { return unconst(p.lattice_ptr()); })
        .def_property_readonly("values", &SMap::values)
        .def_property_readonly("commutative", &SMap::commutative)
        .def("__call__", [](const SMap& p, ElementId a, ElementId b) { return p(a, b); })
        .def("join_value", &SMap::join_value)
        .def("difference_value", &SMap::difference_value)
        .def("state", &state_from_smap)
        .def("to_json", [](const SMap& p) { return serialize_map(p); });

    py::class_<NMap>(m, "NMap")
        .def_property_readonly("lattice", [](const NMap& p) { return unconst(p.lattice_ptr()); })
        .def_property_readonly("arity", &NMap::arity)
        .def_property_readonly("values", &NMap::values)
        .def("__call__", [](const NMap& p, const std::vector<ElementId>& t) { return p(t); })
        .def("to_json", [](const NMap& p) { return serialize_map(p); });

    m.def("parse_map", [](const std::string& text) { return map_object(parse_map(text).map); }, py::arg("text"));
    m.def("load_map", [](const std::string& name) { return map_object(load_map(name).map); }, py::arg("name_or_path"));
    m.def("example1_smap", [] { return std::get<SMap>(load_map("example1-smap").map); });

    m.def(
        "check",
        [](const py::object& map, const std::string& ineq, const std::vector<std::string>& args,
           std::uint32_t variant) {
            InequalityId id = parse_inequality_id(ineq);
            if (py::isinstance<SMap>(map)) {
                const SMap& p = map.cast<const SMap&>();
                auto ids = labels_to_ids(p.lattice(), args);
                if (needs_smap(id)) return report_dict(p.lattice(), eval_smap_inequality(p, id, ids, variant));
                return report_dict(p.lattice(), eval_state_inequality(state_from_smap(p), id, ids));
            }
            const State& s = map.cast<const State&>();
            return report_dict(s.lattice(), eval_state_inequality(s, id, labels_to_ids(s.lattice(), args)));
        },
        py::arg("map"), py::arg("ineq"), py::arg("args"), py::arg("variant") = 0);

    m.def(
        "scan",
        [](const py::object& map, const std::string& ineq, bool variants) {
            InequalityId id = parse_inequality_id(ineq);
            Measure measure = py::isinstance<SMap>(map) ? Measure(map.cast<SMap>()) : Measure(map.cast<State>());
            const Oml& l = std::visit([](const auto& v) -> const Oml& { return v.lattice(); }, measure);
            py::list out;
            for (const auto& r : scan(measure, id, variants).violations) out.append(report_dict(l, r));
            return out;
        },
        py::arg("map"), py::arg("ineq"), py::arg("variants") = false,
        "Violations of one inequality over every argument tuple.");

    m.def(
        "find_smap",
        [](const PyLattice& l, bool commutative, const std::optional<State>& state) -> std::optional<SMap> {
            FeasibilityResult r = solve(assemble_smap_system(*l, options(commutative, state)));
            if (!r.feasible()) return std::nullopt;
            return smap_from_witness(l, std::move(r.witness));
        },
        py::arg("lattice"), py::arg("commutative") = false, py::arg("state") = std::nullopt);

    m.def(
        "sample_smaps",
        [](const PyLattice& l, std::size_t count, std::uint64_t seed, bool commutative,
           const std::optional<State>& state) {
            return sample_smaps(l, count, seed, options(commutative, state)).maps;
        },
        py::arg("lattice"), py::arg("count"), py::arg("seed") = 0, py::arg("commutative") = false,
        py::arg("state") = std::nullopt);

    m.def(
        "maximize",
        [](const PyLattice& l, const std::string& ineq, const std::vector<std::string>& args, bool commutative,
           std::uint32_t variant) -> std::optional<Rational> {
            auto ids = labels_to_ids(*l, args);
            FeasibilityResult r = optimize_inequality_side(*l, parse_inequality_id(ineq), ids, variant, true,
                                                           Sense::Maximize, options(commutative, std::nullopt));
            return r.objective_value;
        },
        py::arg("lattice"), py::arg("ineq"), py::arg("args"), py::arg("commutative") = false,
        py::arg("variant") = 0, "Maximum left-hand side over s-maps, or None when none exist.");

    m.def(
        "extend",
        [](const SMap& p) -> std::optional<NMap> {
            FeasibilityResult r = solve(assemble_extension_system(p.lattice(), p));
            if (!r.feasible()) return std::nullopt;
            return nmap_from_witness(p.lattice_ptr(), 3, std::move(r.witness));
        },
        py::arg("smap"), "A trivariate extension, or None when the certified system is infeasible.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
