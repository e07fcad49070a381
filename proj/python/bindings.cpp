#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clusterq/catalog.hpp"
#include "clusterq/explorer.hpp"
#include "clusterq/service.hpp"

namespace py = pybind11;
using namespace clusterq;

namespace {

ValuedQuiver quiver_from_text(const std::string& text) { return quiver_from_json(json::parse(text)).quiver; }

std::vector<std::string> cluster_strings(const Seed& s) {
    std::vector<std::string> out;
    for (const auto& x : s.cluster) out.push_back(to_fraction_string(x));
    return out;
}

// Engine errors surface as ValueError (bad input) or RuntimeError.
std::string handle_text(const std::string& op, const std::string& request) {
    try {
        return service::handle(op, json::parse(request)).dump();
    } catch (...) {
        auto f = service::describe(std::current_exception());
        if (f.exit_code == 1) throw py::value_error(f.body.dump());
        throw std::runtime_error(f.body.dump());
    }
}

}  // namespace

PYBIND11_MODULE(_clusterq, m) {
    m.doc() = "Exact cluster algebra engine";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<ValuedQuiver>(m, "Quiver")
        .def_static("from_json", &quiver_from_text)
        .def_static("catalog", [](const std::string& name) { return catalog_quiver(name); })
        .def_property_readonly("rank", &ValuedQuiver::rank)
        .def_property_readonly("frozen_count", &ValuedQuiver::frozen_count)
        .def_property_readonly("matrix", &ValuedQuiver::matrix)
        .def_property_readonly("symmetrizer", &ValuedQuiver::symmetrizer)
        .def("b", &ValuedQuiver::b)
        .def("mutate", [](const ValuedQuiver& q, int k) { return mutate(q, k); })
        .def("apply_word", [](const ValuedQuiver& q, std::vector<int> letters) { return apply_word(q, MutationWord{letters}); })
        .def("negate", [](const ValuedQuiver& q) { return negate(q); })
        .def("weight", [](const ValuedQuiver& q) { return weight(q); })
        .def("canonical_key", [](const ValuedQuiver& q, bool modulo_sign) { return py::bytes(canonical_form(q, modulo_sign)); },
             py::arg("modulo_sign") = false)
        .def("to_json", [](const ValuedQuiver& q) { return quiver_to_json(q).dump(); })
        .def("__eq__", [](const ValuedQuiver& a, const ValuedQuiver& b) { return a == b; });

    py::class_<Seed>(m, "Seed")
        .def_static("initial", &initial_seed)
        .def_property_readonly("quiver", [](const Seed& s) { return s.quiver; })
        .def_property_readonly("cluster", &cluster_strings)
        .def("mutate", [](const Seed& s, int k) { return mutate_seed(s, k); })
        .def("apply_word", [](const Seed& s, std::vector<int> letters) { return apply_word(s, MutationWord{letters}); })
        .def("__eq__", [](const Seed& a, const Seed& b) { return a == b; });

    m.def("cluster_variables", [](const ValuedQuiver& q, int max_seeds, int max_depth) {
        auto e = enumerate_cluster_variables(q, SeedBudget{max_seeds, max_depth});
        std::vector<std::string> out;
        for (const auto& v : e.variables) out.push_back(to_fraction_string(v));
        return py::make_tuple(out, to_string(e.status));
    }, py::arg("quiver"), py::arg("max_seeds") = 20000, py::arg("max_depth") = 24);

    m.def("class_size", [](const ValuedQuiver& q, int max_members) {
        ClassBudget b;
        b.max_members = max_members;
        auto r = explore_class(q, b);
        return py::make_tuple(to_string(r.status), r.members.size());
    }, py::arg("quiver"), py::arg("max_members") = 50000);

    m.def("catalog_names", &catalog_names);
    m.def("handle", &handle_text, "Runs a service operation on a JSON request string");
}
