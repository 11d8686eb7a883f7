#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcsat/errors.hpp"
#include "vcsat/family.hpp"
#include "vcsat/io.hpp"
#include "vcsat/modular.hpp"
#include "vcsat/probabilistic.hpp"
#include "vcsat/saturation.hpp"
#include "vcsat/sumset.hpp"

namespace py = pybind11;
using namespace vcsat;

namespace {

// 128-bit values surface as exact python ints via their decimal rendering.
py::int_ to_py_int(Uint128 v) { return py::int_(py::str(to_decimal(v))); }

SetFamily family_from_sets(int n, const std::vector<std::vector<int>>& sets) {
    return SetFamily::from_sets(n, sets);
}

std::vector<std::vector<int>> family_members(const SetFamily& fam) {
    std::vector<std::vector<int>> out;
    out.reserve(fam.size());
    for (std::uint64_t m : fam.masks()) out.push_back(mask_elements(m));
    return out;
}

Builtin builtin_from_name(const std::string& name) {
    if (name == "d3") return Builtin::d3;
    if (name == "d4") return Builtin::d4;
    if (name == "d5") return Builtin::d5;
    throw InvalidInputError("unknown builtin \"" + name + "\" (expected d3, d4, or d5)");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "saturated set families of bounded VC dimension: constructions, "
              "exhaustive verification, and the related numeric checks";

    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<IndeterminateError>(m, "IndeterminateError", PyExc_ArithmeticError);
    py::register_exception<InternalConsistencyError>(m, "InternalConsistencyError",
                                                     PyExc_RuntimeError);

    py::class_<Subset>(m, "Subset")
        .def(py::init([](const std::vector<int>& elems, int n) {
                 return Subset::from_elements(elems, n);
             }),
             py::arg("elements"), py::arg("n"))
        .def_property_readonly("n", [](const Subset& s) { return s.n; })
        .def_property_readonly("elements", &Subset::elements)
        .def("__len__", &Subset::size)
        .def("__contains__", &Subset::contains)
        .def("__eq__", [](const Subset& a, const Subset& b) { return a == b; })
        .def("__repr__", &Subset::to_string);

    py::class_<SetFamily>(m, "SetFamily")
        .def(py::init(&family_from_sets), py::arg("n"), py::arg("sets"))
        .def_property_readonly("n", &SetFamily::ground_size)
        .def_property_readonly("members", &family_members)
        .def("__len__", &SetFamily::size)
        .def("__eq__", [](const SetFamily& a, const SetFamily& b) { return a == b; })
        .def("__repr__", [](const SetFamily& f) {
            return "SetFamily(n=" + std::to_string(f.ground_size()) + ", size=" +
                   std::to_string(f.size()) + ")";
        });

    py::class_<ResidueSet>(m, "ResidueSet")
        .def(py::init([](int modulus, const std::vector<int>& values) {
                 return ResidueSet::from_values(modulus, values);
             }),
             py::arg("modulus"), py::arg("values"))
        .def_property_readonly("modulus", [](const ResidueSet& x) { return x.modulus; })
        .def_property_readonly("values", &ResidueSet::values)
        .def("__len__", &ResidueSet::size)
        .def("__contains__", &ResidueSet::contains)
        .def("__eq__", [](const ResidueSet& a, const ResidueSet& b) { return a == b; })
        .def("__repr__", &ResidueSet::to_string);

    py::class_<SaturationReport>(m, "SaturationReport")
        .def_readonly("saturated", &SaturationReport::saturated)
        .def_readonly("vc", &SaturationReport::vc)
        .def_readonly("counterexample", &SaturationReport::counterexample)
        .def_readonly("shattering_witness", &SaturationReport::shattering_witness);

    py::class_<DuplicateClasses>(m, "DuplicateClasses")
        .def_readonly("n", &DuplicateClasses::n)
        .def_readonly("classes", &DuplicateClasses::classes);

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("cond1", &ConditionReport::cond1)
        .def_readonly("cond2", &ConditionReport::cond2)
        .def_readonly("cond3", &ConditionReport::cond3)
        .def_readonly("witness", &ConditionReport::witness)
        .def("all_pass", &ConditionReport::all_pass);

    py::class_<AlmostShatterReport>(m, "AlmostShatterReport")
        .def_readonly("ok", &AlmostShatterReport::ok)
        .def_readonly("failing_subset", &AlmostShatterReport::failing_subset)
        .def_readonly("missing_traces", &AlmostShatterReport::missing_traces);

    py::class_<LllEvaluation>(m, "LllEvaluation")
        .def_readonly("d", &LllEvaluation::d)
        .def_readonly("exponents", &LllEvaluation::exponents)
        .def_readonly("dependency_counts", &LllEvaluation::dependency_counts)
        .def_readonly("log_margin_lo", &LllEvaluation::log_margin_lo)
        .def_readonly("log_margin_hi", &LllEvaluation::log_margin_hi)
        .def_readonly("holds", &LllEvaluation::holds)
        .def_property_readonly("log_margin", &LllEvaluation::log_margin);

    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("d", &MonteCarloReport::d)
        .def_readonly("trials", &MonteCarloReport::trials)
        .def_readonly("successes", &MonteCarloReport::successes)
        .def_readonly("first_success_seed", &MonteCarloReport::first_success_seed)
        .def_readonly("success_rate", &MonteCarloReport::success_rate);

    py::class_<SumsetBoundReport>(m, "SumsetBoundReport")
        .def_readonly("ok", &SumsetBoundReport::ok)
        .def_readonly("violations", &SumsetBoundReport::violations);

    // family core
    m.def("trace", &trace, py::arg("fam"), py::arg("x"));
    m.def("shatters", &shatters, py::arg("fam"), py::arg("x"));
    m.def("almost_shatters", &almost_shatters, py::arg("fam"), py::arg("x"));
    m.def("vc_dimension", &vc_dimension, py::arg("fam"));
    m.def("shattered_sets", &shattered_sets, py::arg("fam"));
    m.def("sauer_bound",
          [](int n, int d) { return to_py_int(sauer_bound(n, d)); },
          py::arg("n"), py::arg("d"));
    m.def("is_intersecting", &is_intersecting, py::arg("fam"));

    // saturation
    m.def("is_saturated", &is_saturated, py::arg("fam"));
    m.def("duplicate_classes", &duplicate_classes, py::arg("fam"));
    m.def("reduced_family", &reduced_family, py::arg("fam"));
    m.def("is_duplication_safe", &is_duplication_safe, py::arg("fam"), py::arg("x"));
    m.def("extend_by_duplication", &extend_by_duplication, py::arg("fam"), py::arg("x"),
          py::arg("n2"));
    m.def("greedy_saturate", &greedy_saturate, py::arg("fam"));
    m.def("min_saturated_size", &min_saturated_size, py::arg("n"), py::arg("d"));

    // sum-residue constructions
    m.def("modular_family", &modular_family, py::arg("d"), py::arg("x"));
    m.def("check_odd_conditions", &check_odd_conditions, py::arg("d"), py::arg("x"));
    m.def("check_even_conditions", &check_even_conditions, py::arg("d"), py::arg("x"));
    m.def("explicit_x_odd", &explicit_x_odd, py::arg("d"));
    m.def("explicit_x_even", &explicit_x_even, py::arg("d"));
    m.def("find_valid_x", &find_valid_x, py::arg("d"));
    m.def("even_families", &even_families, py::arg("d"), py::arg("x"));
    m.def("cyclic_orbit_family", &cyclic_orbit_family, py::arg("seed"), py::arg("d"));
    m.def("builtin_family",
          [](const std::string& name) { return builtin_family(builtin_from_name(name)); },
          py::arg("name"));
    m.def("build_saturated", &build_saturated, py::arg("d"), py::arg("n"));

    // sumsets
    m.def("restricted_sumset", &restricted_sumset, py::arg("a"), py::arg("s"));
    m.def("check_sumset_bound", &check_sumset_bound, py::arg("d"));

    // sampling and the numeric inequality
    m.def("stream_value", &stream_value, py::arg("seed"), py::arg("i"));
    m.def("sample_pair_family", &sample_pair_family, py::arg("d"), py::arg("seed"));
    m.def("verify_almost_shattering", &verify_almost_shattering, py::arg("fam"),
          py::arg("d"));
    m.def("lll_evaluate", &lll_evaluate, py::arg("d"));
    m.def("monte_carlo_search", &monte_carlo_search, py::arg("d"), py::arg("trials"),
          py::arg("seed"));

    // serialization
    m.def("serialize_family", &serialize_family, py::arg("fam"));
    m.def("parse_family", &parse_family, py::arg("text"));
}
