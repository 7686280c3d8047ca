#include "sphereflow/json_io.hpp"
#include "sphereflow/svg.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sphereflow;

namespace {

RationalField make_field(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                         cplx a) {
    return build_field(zeros, poles, a);
}

std::string analyze_json(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                         cplx a, int stride) {
    const RationalField f = make_field(zeros, poles, a);
    return dump_stable(analysis_to_json(f, analyze(f), stride));
}

std::string classify_json(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                          cplx a) {
    const RationalField f = make_field(zeros, poles, a);
    nlohmann::json j = field_to_json(f);
    j["classification"] = classification_to_json(classify(f));
    return dump_stable(j);
}

std::string nondeg_json(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                        cplx a) {
    const RationalField f = make_field(zeros, poles, a);
    nlohmann::json j = field_to_json(f);
    j["nondegeneracy"] = nondeg_to_json(check_nondegeneracy(f));
    return dump_stable(j);
}

std::string svg(const std::vector<cplx>& zeros, const std::vector<cplx>& poles, cplx a) {
    const RationalField f = make_field(zeros, poles, a);
    return render_svg(f, analyze(f));
}

std::string realize_polynomial_json(const std::vector<std::vector<int>>& nbr) {
    PlaneTree t;
    t.nbr = nbr;
    return dump_stable(realization_to_json(realize_polynomial(t)));
}

std::string realize_antipolynomial_json(int n, const std::vector<std::pair<int, int>>& chords) {
    NcTree t;
    t.n = n;
    t.chords = chords;
    return dump_stable(realization_to_json(realize_antipolynomial(t)));
}

std::string realize_rational_json(const std::vector<std::vector<int>>& blue_rot,
                                  const std::vector<int>& blue_twin,
                                  const std::vector<std::vector<int>>& red_rot,
                                  const std::vector<int>& red_twin) {
    RationalTarget t;
    t.blue = PlaneMultigraph::build(blue_rot, blue_twin, {});
    t.red = PlaneMultigraph::build(red_rot, red_twin, {});
    return dump_stable(realization_to_json(realize_rational(t)));
}

}  // namespace

PYBIND11_MODULE(_sphereflow, m) {
    m.doc() = "rational flows on the Riemann sphere";

    m.def("analyze_json", &analyze_json, py::arg("zeros"), py::arg("poles"),
          py::arg("a") = cplx(1.0, 0.0), py::arg("stride") = 8,
          "full analysis of a field a*prod(w-z)/prod(w-p) as a JSON string");
    m.def("classify_json", &classify_json, py::arg("zeros"), py::arg("poles"),
          py::arg("a") = cplx(1.0, 0.0));
    m.def("nondeg_json", &nondeg_json, py::arg("zeros"), py::arg("poles"),
          py::arg("a") = cplx(1.0, 0.0));
    m.def("render_svg", &svg, py::arg("zeros"), py::arg("poles"),
          py::arg("a") = cplx(1.0, 0.0));

    m.def("realize_polynomial_json", &realize_polynomial_json, py::arg("nbr"),
          "realize an embedded tree, given as ccw neighbor lists");
    m.def("realize_antipolynomial_json", &realize_antipolynomial_json, py::arg("n"),
          py::arg("chords"));
    m.def("realize_rational_json", &realize_rational_json, py::arg("blue_rotation"),
          py::arg("blue_twin"), py::arg("red_rotation"), py::arg("red_twin"));

    m.def("count_plane_trees", &count_plane_trees, py::arg("n"));
    m.def("count_nc_tree_classes", &count_nc_tree_classes, py::arg("dp"));
    m.def("count_nc_trees_labeled", &count_nc_trees_labeled, py::arg("n"));

    m.def(
        "enumerate_plane_trees",
        [](int n) {
            std::vector<std::vector<std::vector<int>>> out;
            for (const auto& t : enumerate_plane_trees(n)) out.push_back(t.nbr);
            return out;
        },
        py::arg("n"), "ccw neighbor lists, one entry per rotation class");
    m.def(
        "enumerate_nc_tree_classes",
        [](int n) {
            std::vector<std::pair<int, std::vector<std::pair<int, int>>>> out;
            for (const auto& t : enumerate_nc_tree_classes(n)) out.emplace_back(t.n, t.chords);
            return out;
        },
        py::arg("n"));
}
