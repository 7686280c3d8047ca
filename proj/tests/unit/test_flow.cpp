#include "doctest.h"

#include "sphereflow/flow.hpp"

#include <cmath>

using namespace sphereflow;

namespace {

int record_near(const Classification& cls, cplx w) {
    int best = -1;
    double bd = 1e300;
    for (size_t i = 0; i < cls.records.size(); ++i) {
        if (cls.records[i].location.is_infinity()) continue;
        const cplx loc = cls.records[i].location.chart_z ? 1.0 / cls.records[i].location.v
                                                         : cls.records[i].location.v;
        const double d = std::abs(loc - w);
        if (d < bd) { bd = d; best = static_cast<int>(i); }
    }
    return best;
}

}  // namespace

TEST_CASE("quadratic real-time flow map matches the tanh solution") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    // w' = w^2 - 1, w(0) = 0 gives w(t) = -tanh(t)
    for (double t : {0.5, 1.0, 2.0}) {
        const SpherePoint p = flow_map(f, cls, SpherePoint::from_w(0.0), t, 0.0, 1e-12);
        REQUIRE_FALSE(p.chart_z);
        CHECK(std::abs(p.v - cplx(-std::tanh(t), 0.0)) < 1e-10);
    }
}

TEST_CASE("imaginary-time orbit of the quadratic is periodic with period pi") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    FlowOptions opt;
    opt.theta_t = M_PI / 2.0;
    opt.t_max = 50.0;
    const Trajectory tr = integrate(f, cls, SpherePoint::from_w(cplx(0.0, 0.1)), opt);
    REQUIRE(tr.verdict.kind == TerminalKind::Periodic);
    CHECK(std::abs(tr.verdict.period - M_PI) < 1e-6);
    // flow map over one period returns to the start
    const SpherePoint back = flow_map(f, cls, SpherePoint::from_w(cplx(0.0, 0.1)), M_PI,
                                      M_PI / 2.0, 1e-12);
    CHECK(chordal_distance(back, SpherePoint::from_w(cplx(0.0, 0.1))) < 1e-8);
}

TEST_CASE("real and imaginary time flows commute") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    CHECK(commutation_defect(f, cls, cplx(0.0, 0.1), 0.4, 0.7, 1e-12) < 1e-9);
    CHECK(commutation_defect(f, cls, cplx(0.3, -0.2), 0.25, 0.5, 1e-12) < 1e-9);
}

TEST_CASE("regularized trajectories converge to the sink") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    const Trajectory tr = integrate(f, cls, SpherePoint::from_w(cplx(0.5, 0.4)));
    REQUIRE(tr.verdict.kind == TerminalKind::ConvergedTo);
    CHECK(tr.verdict.equilibrium_id == record_near(cls, -1.0));
    CHECK(tr.original_time > 0.0);
    // samples report both clocks monotonically
    for (size_t i = 1; i < tr.samples.size(); ++i) {
        CHECK(tr.samples[i].tau >= tr.samples[i - 1].tau);
        CHECK(tr.samples[i].t_orig >= tr.samples[i - 1].t_orig);
    }
}

TEST_CASE("reversed direction finds the source") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    FlowOptions opt;
    opt.direction = -1;
    const Trajectory tr = integrate(f, cls, SpherePoint::from_w(cplx(0.5, 0.4)), opt);
    REQUIRE(tr.verdict.kind == TerminalKind::ConvergedTo);
    CHECK(tr.verdict.equilibrium_id == record_near(cls, 1.0));
}

TEST_CASE("budget exhaustion is reported as such") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    FlowOptions opt;
    opt.t_max = 1e-4;
    const Trajectory tr = integrate(f, cls, SpherePoint::from_w(cplx(0.0, 0.3)), opt);
    CHECK(tr.verdict.kind == TerminalKind::BudgetExhausted);
}

TEST_CASE("flow map refuses to cross a pole in finite time") {
    // w' = -1/w from w = 1 reaches the pole at t = 1/2
    const RationalField f = build_field({}, {0.0}, -1.0);
    const Classification cls = classify(f);
    CHECK_THROWS(flow_map(f, cls, SpherePoint::from_w(1.0), 1.0, 0.0));
    // before the pole the explicit solution w = sqrt(1 - 2t) holds
    const SpherePoint p = flow_map(f, cls, SpherePoint::from_w(1.0), 0.3, 0.0, 1e-12);
    CHECK(std::abs(p.v - std::sqrt(1.0 - 0.6)) < 1e-9);
}

TEST_CASE("integration refuses to start inside a convergence ball") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    CHECK_THROWS(integrate(f, cls, SpherePoint::from_w(cplx(-1.0 + 1e-9, 0.0))));
    FlowOptions opt;
    opt.allow_start_in_ball = true;
    CHECK_NOTHROW(integrate(f, cls, SpherePoint::from_w(cplx(-1.0 + 1e-9, 0.0)), opt));
}

TEST_CASE("cycle period from residues") {
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    CHECK(std::abs(cycle_period(f, {0}) - cplx(0.0, M_PI)) < 1e-12);
    CHECK(std::abs(cycle_period(f, {1}) - cplx(0.0, -M_PI)) < 1e-12);
    CHECK(std::abs(cycle_period(f, {0, 1})) < 1e-12);
    CHECK_THROWS(cycle_period(f, {2}));
}

TEST_CASE("winding census of sampled loops") {
    const RationalField f = build_field({2.0, 0.1, -0.1}, {0.0}, 1.0);
    auto circle = [](cplx c, double r) {
        std::vector<cplx> loop;
        for (int k = 0; k < 256; ++k) {
            const double a = 2.0 * M_PI * k / 256.0;
            loop.push_back(c + r * cplx(std::cos(a), std::sin(a)));
        }
        return loop;
    };
    // small zeros and the pole: d_J = 2, d'_J = 1, Brouwer holds
    const CycleCheck inner = cycle_degrees(f, circle(0.0, 0.5));
    CHECK(inner.d_J == 2);
    CHECK(inner.dp_J == 1);
    CHECK(inner.brouwer_ok);
    // only the far zero: d_J = 1, d'_J = 0
    const CycleCheck far = cycle_degrees(f, circle(2.0, 0.5));
    CHECK(far.d_J == 1);
    CHECK(far.dp_J == 0);
    CHECK(far.brouwer_ok);
    // everything: 3 zeros, 1 pole, Brouwer violated for such a loop
    const CycleCheck all = cycle_degrees(f, circle(0.0, 5.0));
    CHECK(all.d_J == 3);
    CHECK(all.dp_J == 1);
    CHECK_FALSE(all.brouwer_ok);
}

TEST_CASE("original time accumulates the density of the regularized flow") {
    // for the pure quadratic the two clocks stay close on a bounded stretch
    const RationalField f = build_field({1.0, -1.0}, {}, 1.0);
    const Classification cls = classify(f);
    FlowOptions ropt;
    ropt.rel_tol = 1e-12;
    const Trajectory tr = integrate(f, cls, SpherePoint::from_w(cplx(0.2, 0.1)), ropt);
    REQUIRE(tr.verdict.kind == TerminalKind::ConvergedTo);
    // the un-regularized endpoint after the reported original time agrees
    const SpherePoint direct = flow_map(f, cls, SpherePoint::from_w(cplx(0.2, 0.1)),
                                        0.8 * tr.original_time, 0.0, 1e-12);
    double best = 1e300;
    for (const auto& s : tr.samples)
        best = std::min(best, chordal_distance({s.v, s.chart_z}, direct));
    // the direct endpoint must lie on the recorded polyline up to sampling gaps
    CHECK(best < 1e-2);
}
