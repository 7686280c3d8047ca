#include "doctest.h"

#include "sphereflow/portrait.hpp"

#include <cmath>

using namespace sphereflow;

TEST_CASE("quadratic portrait: trivial connection graphs, all checks pass") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Analysis an = analyze(f);
    REQUIRE(an.portrait.mode == FieldMode::Normalized);
    REQUIRE(an.portrait.normalized.has_value());
    const NormalizedPortrait& np = *an.portrait.normalized;
    REQUIRE(np.ok);
    CHECK(np.checks.pass());
    // no poles: one isolated sink on the blue side, one isolated source on the red
    CHECK(np.graphs.blue.n_vertices == 1);
    CHECK(np.graphs.blue.edges() == 0);
    CHECK(np.graphs.red.n_vertices == 1);
    CHECK(np.graphs.red.edges() == 0);
    CHECK(np.skeleton.map.n_vertices == 2);
    CHECK(np.skeleton.map.edges() == 0);
}

TEST_CASE("three zeros against one pole: edge pair and loop") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    const Analysis an = analyze(f);
    REQUIRE(an.portrait.normalized.has_value());
    const NormalizedPortrait& np = *an.portrait.normalized;
    REQUIRE(np.ok);
    CHECK(np.checks.colors_ok);
    CHECK(np.checks.euler_ok);
    CHECK(np.checks.quads_ok);
    CHECK(np.checks.duality_ok);

    // blue: the two sinks joined by one edge through the pole
    const PlaneMultigraph blue_want =
        PlaneMultigraph::build({{0}, {1}}, {1, 0}, {1, 1});
    CHECK(canonical_code(np.graphs.blue) == canonical_code(blue_want));
    // red: a loop at the lone source
    const PlaneMultigraph red_want = PlaneMultigraph::build({{0, 1}}, {1, 0}, {0});
    CHECK(canonical_code(np.graphs.red) == canonical_code(red_want));
    CHECK(np.graphs.blue_edge_pole.size() == 1);
    CHECK(np.graphs.red_edge_pole.size() == 1);

    // skeleton: 4 equilibria, 4 separatrix edges, 2 quad faces
    CHECK(np.skeleton.map.n_vertices == 4);
    CHECK(np.skeleton.map.edges() == 4);
    CHECK(np.skeleton.map.faces().size() == 2);
}

TEST_CASE("cubic polynomial reads as a path tree") {
    const cplx om = std::polar(1.0, 2.0 * M_PI / 3.0);
    const RationalField f = build_field({1.0, om, std::conj(om)}, {}, 1.0);
    const Analysis an = analyze(f);
    REQUIRE(an.portrait.mode == FieldMode::Polynomial);
    REQUIRE(an.portrait.polynomial.has_value());
    const PolynomialPortrait& pp = *an.portrait.polynomial;
    REQUIRE(pp.ok);
    REQUIRE(pp.sector_terminals.size() == 4);
    REQUIRE(pp.parse.ok);
    REQUIRE(pp.parse.tree.size() == 3);

    // the tree is the path sink-source-sink: middle vertex of degree 2 is the source
    PlaneTree path;
    path.nbr = {{1}, {0, 2}, {1}};
    CHECK(tree_code(pp.parse.tree) == tree_code(path));
    int sources = 0, sinks = 0;
    for (int v = 0; v < pp.parse.tree.size(); ++v) {
        if (pp.vertex_kind[v] == 0) {
            ++sources;
            CHECK(pp.parse.tree.nbr[v].size() == 2);
        } else {
            ++sinks;
            CHECK(pp.parse.tree.nbr[v].size() == 1);
        }
    }
    CHECK(sources == 1);
    CHECK(sinks == 2);

    // sector terminals alternate sink / source around the circle
    for (size_t k = 0; k < pp.sector_terminals.size(); ++k) {
        const auto kind = an.cls.records[pp.sector_terminals[k]].kind;
        CHECK(kind == (k % 2 == 0 ? an.cls.records[pp.sector_terminals[0]].kind
                                  : an.cls.records[pp.sector_terminals[1]].kind));
    }
}

TEST_CASE("cyclotomic quartic has no readable polynomial portrait") {
    // centers instead of sinks: the boundary separatrices never converge
    const RationalField f = build_field({1.0, cplx(0, 1), -1.0, cplx(0, -1)}, {}, 1.0);
    SeparatrixOptions opt;
    opt.flow.max_steps = 60000;
    const Analysis an = analyze(f, opt);
    REQUIRE(an.portrait.polynomial.has_value());
    CHECK_FALSE(an.portrait.polynomial->ok);
    CHECK_FALSE(an.portrait.polynomial->reason.empty());
}

TEST_CASE("inverse-linear field reads as the one-chord nc pair") {
    const RationalField f = build_field({}, {0.0}, cplx(0.0, 1.0));
    const Analysis an = analyze(f);
    REQUIRE(an.portrait.mode == FieldMode::AntiPolynomial);
    REQUIRE(an.portrait.antipolynomial.has_value());
    const AntiPolynomialPortrait& ap = *an.portrait.antipolynomial;
    REQUIRE(ap.ok);
    CHECK(ap.blue.n == 2);
    REQUIRE(ap.blue.chords.size() == 1);
    CHECK(ap.blue.chords[0] == std::pair<int, int>{0, 1});
    CHECK(ap.red.n == 2);
    REQUIRE(ap.red.chords.size() == 1);
    CHECK(ap.dual_ok);
    CHECK(ap.blue_chord_pole.size() == 1);
}

TEST_CASE("analyze bundles classification, separatrices and portrait consistently") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    const Analysis an = analyze(f);
    const SeparatrixSet direct = trace_separatrices(f, an.cls);
    REQUIRE(an.seps.seps.size() == direct.seps.size());
    for (size_t i = 0; i < direct.seps.size(); ++i)
        CHECK(an.seps.seps[i].terminal_equilibrium == direct.seps[i].terminal_equilibrium);
    // skeleton darts map back to real separatrix ids
    REQUIRE(an.portrait.normalized.has_value());
    for (int s : an.portrait.normalized->skeleton.dart_separatrix) {
        CHECK(s >= 0);
        CHECK(s < static_cast<int>(an.seps.seps.size()));
    }
}
