#include "doctest.h"

#include "sphereflow/json_io.hpp"

using namespace sphereflow;
using nlohmann::json;

TEST_CASE("field survives a json round trip") {
    const RationalField f =
        build_field({cplx(2.0, 0.0), cplx(0.1, -0.3)}, {cplx(-0.5, 0.25)}, cplx(0.7, -0.2));
    const json j = field_to_json(f);
    CHECK(j.at("schema") == "sphere-flows/1");
    const RationalField g = field_from_json(j);
    REQUIRE(g.zeros.size() == f.zeros.size());
    REQUIRE(g.poles.size() == f.poles.size());
    for (size_t i = 0; i < f.zeros.size(); ++i) CHECK(std::abs(g.zeros[i] - f.zeros[i]) < 1e-11);
    CHECK(std::abs(g.poles[0] - f.poles[0]) < 1e-11);
    CHECK(std::abs(g.a - f.a) < 1e-11);
    CHECK(g.mode == f.mode);
}

TEST_CASE("unsupported schema and malformed fields are rejected") {
    json j = field_to_json(build_field({1.0, -1.0}, {}, 1.0));
    j["schema"] = "sphere-flows/999";
    CHECK_THROWS(field_from_json(j));
    // coincident zero and pole
    json bad;
    bad["zeros"] = json::array({json::array({1.0, 0.0})});
    bad["poles"] = json::array({json::array({1.0, 0.0})});
    CHECK_THROWS(field_from_json(bad));
}

TEST_CASE("numbers are rounded so reruns emit identical bytes") {
    json j;
    j["x"] = 1.0 / 3.0;
    // dump_stable writes through the 12 digit filter applied by the emitters;
    // the emitters themselves round before storing
    const RationalField f = build_field({cplx(1.0 / 3.0, 0.0), -1.0}, {}, 1.0);
    const json a = field_to_json(f);
    CHECK(a.at("zeros").at(0).at(0).get<double>() == 0.333333333333);
    // byte identity of repeated dumps
    const Analysis an = analyze(f);
    const std::string d1 = dump_stable(analysis_to_json(f, an));
    const Analysis an2 = analyze(f);
    const std::string d2 = dump_stable(analysis_to_json(f, an2));
    CHECK(d1 == d2);
    CHECK(d1.find("sphere-flows/1") != std::string::npos);
}

TEST_CASE("analysis document carries every section") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    const Analysis an = analyze(f);
    const json j = analysis_to_json(f, an);
    // the field sits at the top level of the document
    CHECK(j.contains("zeros"));
    CHECK(j.contains("a"));
    CHECK(j.contains("classification"));
    CHECK(j.contains("separatrices"));
    CHECK(j.contains("portrait"));
    CHECK(j.at("classification").at("records").size() == an.cls.records.size());
    // stride thins the samples but keeps both endpoints
    const json thin = separatrices_to_json(an.seps, 64);
    const json fat = separatrices_to_json(an.seps, 1);
    for (size_t i = 0; i < an.seps.seps.size(); ++i) {
        const auto& t = an.seps.seps[i].traj.samples;
        CHECK(fat.at("items").at(i).at("samples").size() == t.size());
        CHECK(thin.at("items").at(i).at("samples").size() <= (t.size() + 63) / 64 + 1);
        const auto& last = thin.at("items").at(i).at("samples").back();
        CHECK(last.at(2).get<double>() == doctest::Approx(t.back().t_orig));
    }
}

TEST_CASE("nondegeneracy report serializes verdicts and witnesses") {
    const RationalField f = build_field({1.0, cplx(0, 1), -1.0, cplx(0, -1)}, {}, 1.0);
    const json j = nondeg_to_json(check_nondegeneracy(f));
    CHECK(j.at("iii_residue_sums").at("verdict") == "fail");
    CHECK(j.at("iii_residue_sums").at("witnesses").size() >= 2);
    CHECK(j.at("ii_zero_pole_line").at("verdict") == "pass");
    CHECK(j.at("pass") == false);
}

TEST_CASE("realization report serializes the plan and the field") {
    PlaneTree path;
    path.nbr = {{1}, {0, 2}, {1}};
    const RealizationResult r = realize_polynomial(path);
    REQUIRE(r.ok);
    const json j = realization_to_json(r);
    CHECK(j.at("ok") == true);
    CHECK(j.contains("field"));
    CHECK(j.at("plan").size() == r.plan.size());
    // a failed run keeps the reason and drops the field
    PlaneTree single;
    single.nbr = {{}};
    const json bad = realization_to_json(realize_polynomial(single));
    CHECK(bad.at("ok") == false);
    CHECK_FALSE(bad.contains("field"));
    CHECK(bad.contains("reason"));
}
