#include "doctest.h"

#include "sphereflow/realize.hpp"

using namespace sphereflow;

TEST_CASE("path and star trees realize as polynomial fields") {
    PlaneTree path;
    path.nbr = {{1}, {0, 2}, {1, 3}, {2}};
    const RealizationResult rp = realize_polynomial(path);
    REQUIRE(rp.ok);
    REQUIRE(rp.field.has_value());
    CHECK(rp.field->mode == FieldMode::Polynomial);
    CHECK(rp.field->d == 4);
    CHECK(verify_polynomial(*rp.field, path));

    PlaneTree star;
    star.nbr = {{1, 2, 3}, {0}, {0}, {0}};
    const RealizationResult rs = realize_polynomial(star);
    REQUIRE(rs.ok);
    CHECK(verify_polynomial(*rs.field, star));
    // the two trees are different, so the cross checks must fail
    CHECK_FALSE(verify_polynomial(*rs.field, path));
    CHECK_FALSE(verify_polynomial(*rp.field, star));
}

TEST_CASE("polynomial realization refuses degenerate input") {
    PlaneTree single;
    single.nbr = {{}};
    CHECK_FALSE(realize_polynomial(single).ok);
}

TEST_CASE("edge-pair and loop-plus-edge targets realize as rational fields") {
    // one pole joining two sinks; red side a loop on one source
    RationalTarget t2;
    t2.blue = PlaneMultigraph::build({{0}, {1}}, {1, 0});
    t2.red = PlaneMultigraph::build({{0, 1}}, {1, 0});
    const RealizationResult r2 = realize_rational(t2);
    REQUIRE(r2.ok);
    CHECK(r2.field->dp == 1);
    CHECK(verify_rational(*r2.field, t2));

    // two poles: blue loop plus pendant edge, red the complementary picture
    RationalTarget t7;
    t7.blue = PlaneMultigraph::build({{0, 1, 2}, {3}}, {1, 0, 3, 2});
    t7.red = PlaneMultigraph::build({{0}, {1, 2, 3}}, {1, 0, 3, 2});
    const RealizationResult r7 = realize_rational(t7);
    REQUIRE(r7.ok);
    CHECK(r7.field->dp == 2);
    CHECK(verify_rational(*r7.field, t7));
    CHECK_FALSE(verify_rational(*r7.field, t2));
}

TEST_CASE("base case of the rational induction is the plain quadratic") {
    RationalTarget empty;
    empty.blue = PlaneMultigraph::build({{}}, {});
    empty.red = PlaneMultigraph::build({{}}, {});
    const RealizationResult r = realize_rational(empty);
    REQUIRE(r.ok);
    CHECK(r.field->d == 2);
    CHECK(r.field->dp == 0);
}

TEST_CASE("incompatible graph pairs are rejected, not mis-realized") {
    // blue double edge needs its red partner to be a double loop arrangement;
    // pairing it with loop-plus-edge cannot be drawn on the sphere
    RationalTarget bad;
    bad.blue = PlaneMultigraph::build({{0, 2}, {1, 3}}, {1, 0, 3, 2});
    bad.red = PlaneMultigraph::build({{0}, {1, 2, 3}}, {1, 0, 3, 2});
    const RealizationResult r = realize_rational(bad);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.reason.empty());
}

TEST_CASE("nc targets on four points realize as pole-only fields") {
    NcTree path;
    path.n = 4;
    path.chords = {{0, 1}, {1, 2}, {2, 3}};
    const RealizationResult rp = realize_antipolynomial(path);
    REQUIRE(rp.ok);
    CHECK(rp.field->d == 0);
    CHECK(rp.field->dp == 3);
    CHECK(verify_antipolynomial(*rp.field, path));

    NcTree star;
    star.n = 4;
    star.chords = {{0, 1}, {0, 2}, {0, 3}};
    const RealizationResult rs = realize_antipolynomial(star);
    REQUIRE(rs.ok);
    CHECK(verify_antipolynomial(*rs.field, star));
    CHECK_FALSE(verify_antipolynomial(*rs.field, path));
}

TEST_CASE("realization plans narrate the induction") {
    PlaneTree path;
    path.nbr = {{1}, {0, 2}, {1}};
    const RealizationResult r = realize_polynomial(path);
    REQUIRE(r.ok);
    CHECK_FALSE(r.plan.empty());
}
