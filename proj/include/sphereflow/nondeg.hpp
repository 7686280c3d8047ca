#pragma once

#include "sphereflow/field.hpp"

#include <string>
#include <vector>

namespace sphereflow {

struct PathSegment {
    enum class Kind { Line, Arc } kind = Kind::Line;
    cplx z0 = 0.0, z1 = 0.0;                       // line endpoints
    cplx center = 0.0;                             // arc data
    double radius = 0.0, angle0 = 0.0, angle1 = 0.0;

    static PathSegment line(cplx a, cplx b);
    static PathSegment arc(cplx c, double r, double a0, double a1);
};

using Path = std::vector<PathSegment>;

Path polyline(const std::vector<cplx>& pts);

// integral of omega = Q/P dw along the path (adaptive Gauss-Kronrod 7-15).
// Throws when the path passes within `clearance` (times scene scale) of a zero of P,
// endpoints excepted only at poles.
cplx integrate_omega(const RationalField& f, const Path& path,
                     double rel_tol = 1e-12, double clearance = 1e-9);

// same integral over one straight segment expressed in either chart
// (Q/P dw on the w side, Qz/Pz dz on the z side); no clearance precheck
cplx integrate_omega_segment(const RationalField& f, cplx a, cplx b, bool chart_z,
                             double rel_tol = 1e-12);

struct PeriodModule {
    std::vector<cplx> generators;   // 2 pi i eta_j
};

PeriodModule period_module(const RationalField& f);

struct PeriodDistance {
    double distance = 0.0;
    std::vector<int> combination;
    bool boundary = false;          // minimizer on the |m_j| <= M box, or the search
                                    // budget ran out: treat the distance as inconclusive
};

// min over |m_j| <= M of |value - sum m_j g_j|; with mod_reals the distance of the
// imaginary part only (membership in R + P)
PeriodDistance period_distance(cplx value, const PeriodModule& pm, bool mod_reals, int M = 20);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct ConditionReport {
    Verdict verdict = Verdict::Pass;
    std::string detail;
    std::vector<std::vector<int>> witness_subsets;  // cond iii offenders (zero ids), capped
    double worst = 0.0;
};

struct NondegTolerances {
    double res_tol = 1e-7;
    double period_tol = 1e-6;
    double line_clearance = 1e-6;
    int lattice_bound = 20;
};

struct NondegReport {
    ConditionReport cond_i, cond_ii, cond_iii, cond_iv;
    bool pass() const;
};

NondegReport check_nondegeneracy(const RationalField& f, const NondegTolerances& tol = {});

}  // namespace sphereflow
