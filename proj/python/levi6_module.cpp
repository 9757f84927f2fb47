#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levi6/elliptic.hpp"
#include "levi6/hyperbolic.hpp"
#include "levi6/manifest.hpp"

namespace py = pybind11;

namespace {

levi6::Chart chart_from_names(const std::vector<std::string>& names,
                              int orientation) {
    if (names.size() != 6)
        throw levi6::Levi6Error("chart needs exactly 6 names");
    std::array<std::string, 6> arr;
    std::copy(names.begin(), names.end(), arr.begin());
    return levi6::Chart(arr, orientation);
}

levi6::Point point_from_list(const std::vector<double>& coords) {
    if (coords.size() != 6)
        throw levi6::Levi6Error("a point needs exactly 6 coordinates");
    levi6::Point pt;
    std::copy(coords.begin(), coords.end(), pt.begin());
    return pt;
}

levi6::CommandResult run(const std::string& command,
                         const std::string& manifest_json) {
    auto m = levi6::parse_manifest(nlohmann::json::parse(manifest_json));
    return levi6::run_manifest_command(command, m, {});
}

}  // namespace

PYBIND11_MODULE(_levi6, m) {
    m.doc() = "canonical invariants of rank-4 distributions on 6-dim charts";

    py::class_<levi6::Expr>(m, "Expr")
        .def("__str__",
             [](const levi6::Expr& e) { return levi6::to_string(e); });

    m.def(
        "parse",
        [](const std::string& text, const std::vector<std::string>& names) {
            return levi6::parse_expr(text, chart_from_names(names, 1));
        },
        py::arg("text"), py::arg("chart"));
    m.def(
        "differentiate",
        [](const levi6::Expr& e, const std::vector<std::string>& names,
           const std::string& var) {
            levi6::Chart chart = chart_from_names(names, 1);
            int idx = chart.index_of(var);
            if (idx < 0) throw levi6::Levi6Error("unknown variable " + var);
            return levi6::differentiate(e, idx);
        },
        py::arg("expr"), py::arg("chart"), py::arg("var"));
    m.def(
        "evaluate",
        [](const levi6::Expr& e, const std::vector<double>& pt) {
            return levi6::evaluate(e, point_from_list(pt));
        },
        py::arg("expr"), py::arg("point"));
    m.def(
        "pfaffian",
        [](const std::vector<double>& entries) {
            if (entries.size() != 6)
                throw levi6::Levi6Error(
                    "pfaffian takes the 6 upper entries "
                    "(a12,a13,a14,a23,a24,a34)");
            levi6::AntisymForm4<double> a;
            std::copy(entries.begin(), entries.end(), a.e.begin());
            return levi6::pfaffian(a);
        },
        py::arg("upper_entries"));

    m.def(
        "classify",
        [](const std::string& manifest_json) {
            auto r = run("classify", manifest_json);
            return r.report.at("classification").dump();
        },
        py::arg("manifest_json"),
        "per-point classification as a JSON string");
    m.def(
        "report",
        [](const std::string& manifest_json) {
            return run("report", manifest_json).report.dump(2);
        },
        py::arg("manifest_json"), "full JSON report");
    m.def(
        "check_flat",
        [](const std::string& manifest_json) {
            auto r = run("check-flat", manifest_json);
            if (r.exit_code == levi6::kExitOk) return true;
            if (r.exit_code == levi6::kExitNotFlat) return false;
            throw levi6::Levi6Error("structure is degenerate");
        },
        py::arg("manifest_json"));

    py::register_exception<levi6::Levi6Error>(m, "Levi6Error");
}
