#pragma once

#include "sphereflow/field.hpp"
#include "sphereflow/flow.hpp"

#include <vector>

namespace sphereflow {

// Blue separatrices run forward in time (unstable branches, ending at sinks or
// boundary sink nodes); red ones run backward (stable branches, ending at sources).
enum class SepColor { Blue, Red };

std::string to_string(SepColor c);

// Structure of the circle obtained by blowing up a degenerate point at infinity.
// A hidden pole of order m >= 2 carries 2(m+1) saddles alternating red/blue; a
// hidden zero of order mu >= 2 carries 2(mu-1) nodes alternating sink/source.
// The color of a boundary point is the color of the plane separatrices meeting it.
struct BoundarySaddle {
    int label = -1;       // ascending angle in [0, 2pi)
    double angle = 0.0;   // arg w of the direction
    SepColor color = SepColor::Blue;
};

struct BoundarySaddleSet {
    std::vector<BoundarySaddle> saddles;
    bool node_like = false;   // hidden zero at infinity: nodes, no plane separatrices of their own
    int count() const { return static_cast<int>(saddles.size()); }
};

BoundarySaddleSet boundary_saddles(const RationalField& f);

struct Separatrix {
    int id = -1;
    SepColor color = SepColor::Blue;

    // origin: a simple pole (4 branches each) or a boundary saddle (1 branch)
    int pole_id = -1;           // equilibrium record id, -1 for boundary origins
    int branch = -1;            // 0/1: the two rays of the eigendirection
    int boundary_label = -1;    // -1 for pole origins

    Trajectory traj;            // traced from a seed near the origin

    // terminal
    int terminal_equilibrium = -1;   // record id when the trace converged
    bool terminal_at_infinity = false;
    double terminal_angle = 0.0;     // asymptotic boundary angle (arg w) when landing on a node circle
    int terminal_boundary_label = -1;
    bool suspicious = false;         // passed close to a saddle it did not terminate at
};

struct SeparatrixOptions {
    double seed_offset = 1e-6;       // times the origin's local scale
    double boundary_seed_r = 1e-4;   // |z| of boundary saddle seeds
    double saddle_suspicion = 1e-4;  // times local scale
    FlowOptions flow;                // detect_periodic off, allow_start_in_ball on
    SeparatrixOptions() {
        flow.detect_periodic = false;
        flow.allow_start_in_ball = true;
        // regularized time is only a parameter; deep scale separation needs
        // astronomical tau to cross slow regions, so cap by steps alone
        flow.t_max = 1e300;
    }
};

struct SeparatrixSet {
    BoundarySaddleSet boundary;
    std::vector<Separatrix> seps;
};

SeparatrixSet trace_separatrices(const RationalField& f, const Classification& cls,
                                 const SeparatrixOptions& opt = {});

// crossings of the circle |w| = rho, refined on the trajectory
struct Crossing {
    int separatrix_id = -1;
    double angle = 0.0;   // arg w in [0, 2pi)
    double radius = 0.0;  // achieved |w| after refinement
};

struct CrossingReport {
    bool transversal = true;   // radial speed keeps one sign on the circle
    std::vector<Crossing> crossings;
};

CrossingReport crossing_angles(const RationalField& f, const Classification& cls,
                               const SeparatrixSet& seps, double rho);

// original time from sample k of the separatrix to its origin (pole or blown-up
// circle), via the integrated time density plus an analytic tail over the seed gap
double time_to_origin(const RationalField& f, const Classification& cls,
                      const Separatrix& sep, size_t sample_index);

// the same quantity as a contour integral of omega = dw/f along the traced
// polyline; real part should match time_to_origin, imaginary part should vanish
cplx omega_to_origin(const RationalField& f, const Classification& cls,
                     const Separatrix& sep, size_t sample_index);

}  // namespace sphereflow
