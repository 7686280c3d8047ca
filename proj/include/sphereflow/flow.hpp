#pragma once

#include "sphereflow/field.hpp"

#include <string>
#include <vector>

namespace sphereflow {

struct FlowOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    double t_max = 1e12;            // budget in the integration parameter
    long max_steps = 400000;
    double theta_t = 0.0;           // rotation of complex time; theta != 0 forces the un-regularized field
    bool unregularized = false;     // un-regularized field also at theta = 0 (holomorphic flow map)
    int direction = +1;
    double conv_factor = 1e-3;      // convergence radius = conv_factor * per-equilibrium local scale
    int contraction_steps = 10;
    double closure_tol = 1e-6;      // Poincare return proximity, times scene scale
    double pole_clearance = 1e-7;   // un-regularized stop distance to poles, times scene scale
    bool detect_periodic = true;
    bool detect_convergence = true;
    bool allow_start_in_ball = false;   // separatrix seeds start inside a convergence ball
};

struct TrajectorySample {
    double tau;       // signed integration parameter
    double t_orig;    // accumulated original time
    cplx v;
    bool chart_z;
};

enum class TerminalKind {
    ConvergedTo, ReachedSaddle, Periodic, BudgetExhausted, PoleClearanceStop, StepUnderflow
};

std::string to_string(TerminalKind k);

struct TrajectoryVerdict {
    TerminalKind kind = TerminalKind::BudgetExhausted;
    int equilibrium_id = -1;
    double period = 0.0;        // original time, Periodic only
    std::string note;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryVerdict verdict;
    double original_time = 0.0;  // t_orig at the end
    int direction = +1;
    double theta = 0.0;
    std::vector<double> min_equilibrium_distance;  // per classification record, owner-chart metric
};

// errors: start within the convergence radius of an equilibrium
Trajectory integrate(const RationalField& f, const Classification& cls, SpherePoint start,
                     const FlowOptions& opt = {});

// endpoint of the un-regularized flow after complex time T = e^{i theta} * t, t >= 0.
// errors: existence domain left (pole hit) before time runs out
SpherePoint flow_map(const RationalField& f, const Classification& cls, SpherePoint start,
                     double t, double theta, double rel_tol = 1e-10);

// sphere distance between e^{i pi/2 * t2} after t1 and the reverse order
double commutation_defect(const RationalField& f, const Classification& cls, cplx w0,
                          double t1, double t2, double rel_tol = 1e-10);

// T = 2 pi i sum_{j in J} eta_j for zero indices J
cplx cycle_period(const RationalField& f, const std::vector<int>& J);

struct CycleCheck {
    int d_J = 0, dp_J = 0;
    bool brouwer_ok = false;
};

// winding-number census of a sampled closed loop: Brouwer relation d'_J = d_J - 1
CycleCheck cycle_degrees(const RationalField& f, const std::vector<cplx>& loop);

}  // namespace sphereflow
