#include "doctest.h"

#include "sphereflow/field.hpp"

#include <algorithm>
#include <map>

using namespace sphereflow;

TEST_CASE("quadratic field structure") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    CHECK(f.mode == FieldMode::Normalized);
    CHECK(f.d == 2);
    CHECK(f.dp == 0);
    CHECK(f.kappa == 0);
    CHECK(f.inf_mult == 0);
    REQUIRE(f.P.coeffs.size() == 3);
    CHECK(std::abs(f.P.coeffs[0] - cplx(-1, 0)) < 1e-15);
    CHECK(std::abs(f.P.coeffs[1]) < 1e-15);
    CHECK(std::abs(f.P.coeffs[2] - cplx(1, 0)) < 1e-15);

    const Classification cls = classify(f);
    REQUIRE(cls.records.size() == 2);
    CHECK(cls.records[0].kind == EquilibriumKind::Source);
    CHECK(std::abs(cls.records[0].linearization - cplx(2, 0)) < 1e-12);
    CHECK(cls.records[1].kind == EquilibriumKind::Sink);
    CHECK(std::abs(cls.records[1].linearization - cplx(-2, 0)) < 1e-12);
    CHECK(cls.infinity_regular);
}

TEST_CASE("mode detection") {
    CHECK(build_field({0.0, 1.0, -1.0}, {}, 1.0).mode == FieldMode::Polynomial);
    CHECK(build_field({}, {0.0, 1.0}, cplx(0, 1)).mode == FieldMode::AntiPolynomial);
    CHECK(build_field({2.0, 0.1, -0.1}, {0.0}, 1.0).mode == FieldMode::Normalized);
    // the cubic example lives in no special chart: d = 2 with one pole
    CHECK(build_field({1.0, -0.5}, {0.0}, -1.0).mode == FieldMode::General);
}

TEST_CASE("cyclotomic quartic has centers at the imaginary roots") {
    const RationalField f = build_field({1.0, cplx(0, 1), -1.0, cplx(0, -1)}, {}, 1.0);
    const Classification cls = classify(f);
    // 4 zeros plus the hidden order-2 pole at infinity
    REQUIRE(cls.records.size() == 5);
    CHECK(cls.records[0].kind == EquilibriumKind::Source);
    CHECK(cls.records[1].kind == EquilibriumKind::Center);
    CHECK(cls.records[2].kind == EquilibriumKind::Sink);
    CHECK(cls.records[3].kind == EquilibriumKind::Center);
    CHECK(std::abs(cls.records[1].linearization - cplx(0, -4)) < 1e-12);
    CHECK(std::abs(cls.records[3].linearization - cplx(0, 4)) < 1e-12);
    CHECK(cls.records[4].location.is_infinity());
    CHECK(cls.records[4].kind == EquilibriumKind::DegeneratePole);
    CHECK(cls.records[4].multiplicity == 2);
}

TEST_CASE("degenerate zero and hidden pole at infinity") {
    // wdot = w^3 (1 - w): triple zero at the origin, order-2 hidden pole at infinity
    const RationalField f = build_field({0.0, 0.0, 0.0, 1.0}, {}, -1.0, true);
    CHECK(f.inf_mult == -2);
    const Classification cls = classify(f);
    bool deg = false;
    for (const auto& r : cls.records)
        if (r.kind == EquilibriumKind::DegenerateZero) {
            deg = true;
            CHECK(r.multiplicity == 3);
            CHECK(std::abs(r.location.w()) < 1e-12);
        }
    CHECK(deg);
}

TEST_CASE("plain cubic polynomial has a simple pole saddle at infinity") {
    const RationalField f = build_field({1.0, cplx(-0.5, 0.8), cplx(-0.5, -0.8)}, {}, 1.0);
    CHECK(f.inf_mult == -1);
    const Classification cls = classify(f);
    CHECK_FALSE(cls.infinity_regular);
    const auto& inf = cls.records.back();
    CHECK(inf.location.is_infinity());
    CHECK(inf.kind == EquilibriumKind::PoleSaddle);
}

TEST_CASE("residues sum to zero and invert the linearization") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    const auto eta = residues(f);
    REQUIRE(eta.size() == 3);
    cplx sum = 0.0;
    for (const auto& e : eta) sum += e;
    CHECK(std::abs(sum) < 1e-12);
    const Classification cls = classify(f);
    for (size_t j = 0; j < eta.size(); ++j)
        CHECK(std::abs(eta[j] * cls.records[j].linearization - 1.0) < 1e-10);
}

TEST_CASE("classification kinds survive a Mobius change of coordinates") {
    const RationalField f = build_field({1.0, cplx(-0.3, 0.6), cplx(0.2, -0.8), -1.2},
                                        {cplx(0.4, 0.1), cplx(-0.6, -0.4)}, cplx(0.7, 0.3));
    const Mobius m = Mobius{cplx(1, 0.3), cplx(0.2, 0), cplx(0.15, -0.1), cplx(1, 0)};
    const RationalField g = apply_mobius(f, m);

    auto kinds = [](const Classification& c) {
        std::map<EquilibriumKind, int> k;
        for (const auto& r : c.records) ++k[r.kind];
        return k;
    };
    CHECK(kinds(classify(f)) == kinds(classify(g)));

    // residues are coordinate free
    auto ef = residues(f), eg = residues(g);
    std::sort(ef.begin(), ef.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::sort(eg.begin(), eg.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    REQUIRE(ef.size() == eg.size());
    for (size_t i = 0; i < ef.size(); ++i) CHECK(std::abs(ef[i] - eg[i]) < 1e-8);
}

TEST_CASE("saddle frame spans the branch directions") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    const Classification cls = classify(f);
    int pid = -1;
    for (const auto& r : cls.records)
        if (r.kind == EquilibriumKind::PoleSaddle) pid = r.id;
    REQUIRE(pid >= 0);
    const SaddleFrame fr = saddle_frame(f, cls, pid);
    // P(0) conj(Q'(0)) = 0.02 > 0: unstable along the real axis
    CHECK(std::abs(fr.unstable - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(fr.stable - cplx(0, 1)) < 1e-12);
    CHECK(fr.lambda == doctest::Approx(0.02).epsilon(1e-10));
}

TEST_CASE("chordal distance and chart plumbing") {
    CHECK(chordal_distance(SpherePoint::from_w(0.0), SpherePoint::infinity()) ==
          doctest::Approx(1.0));
    const SpherePoint p = SpherePoint::from_w(cplx(3, 4));
    const SpherePoint q = p.other_chart();
    CHECK(q.chart_z);
    CHECK(std::abs(q.v - 1.0 / cplx(3, 4)) < 1e-15);
    CHECK(chordal_distance(p, q) < 1e-15);
}

TEST_CASE("hamiltonian data of a one-pole field") {
    const RationalField f = build_field({}, {0.0}, cplx(0, 1));
    const HamiltonianData h = hamiltonian_data(f);
    // F' = -conj(i) Q = i w, so F = i w^2 / 2
    REQUIRE(h.F.coeffs.size() == 3);
    CHECK(std::abs(h.F.coeffs[2] - cplx(0, 0.5)) < 1e-14);
    REQUIRE(h.saddle_H.size() == 1);
    CHECK(h.saddle_H[0] == doctest::Approx(0.0));
    CHECK(h.distinct);
}
