#pragma once

#include "sphereflow/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sphereflow {

// Point on the Riemann sphere, kept in one of the two affine charts (z = 1/w).
struct SpherePoint {
    cplx v = 0.0;
    bool chart_z = false;

    static SpherePoint from_w(cplx w) { return {w, false}; }
    static SpherePoint infinity() { return {0.0, true}; }
    bool is_infinity() const { return chart_z && v == cplx(0.0); }
    cplx w() const;            // may overflow to huge values near infinity
    SpherePoint other_chart() const;
};

double chordal_distance(const SpherePoint& p, const SpherePoint& q);
double chordal_distance(cplx w1, cplx w2);

struct Mobius {
    cplx A = 1.0, B = 0.0, C = 0.0, D = 1.0;

    static Mobius identity() { return {}; }
    static Mobius inversion() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mobius translation(cplx b) { return {1.0, b, 0.0, 1.0}; }
    static Mobius scaling(cplx s) { return {s, 0.0, 0.0, 1.0}; }

    cplx det() const { return A * D - B * C; }
    Mobius inverse() const { return {D, -B, -C, A}; }
    Mobius compose(const Mobius& inner) const;   // this applied after inner

    // image of a finite point; infinite flag set when it lands at infinity
    struct Image { cplx w; bool infinite; };
    Image map(cplx w) const;
    Image map_infinity() const;
    cplx derivative(cplx w) const;   // dm/dw at a finite point
};

enum class FieldMode { Normalized, Polynomial, AntiPolynomial, General };

std::string to_string(FieldMode m);

// wdot = P(w)/Q(w), P = a * prod(w - zeros), Q monic = prod(w - poles).
// Chart z rational form: zdot = Pz/Qz; regularized flow in either chart is
// (1+|.|^2)^{-kappa} * num * conj(den) with kappa = max(d-2, d').
struct RationalField {
    cplx a = 1.0;
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
    FieldMode mode = FieldMode::General;

    Poly P, Q;
    Poly Pz, Qz;
    int d = 0, dp = 0;
    int kappa = 0;
    int inf_mult = 0;          // d' - (d-2): >0 hidden zero at infinity, <0 hidden pole

    double scene_scale = 1.0;  // max(1, |e|) over all finite zeros/poles
};

RationalField build_field(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                          cplx a = 1.0, bool allow_multiple = false);

RationalField from_numerator(const Poly& P);                    // polynomial mode via find_roots
RationalField apply_mobius(const RationalField& f, const Mobius& m);

// tangent value in the chart of p
cplx eval_regularized(const RationalField& f, const SpherePoint& p);
cplx eval_unregularized(const RationalField& f, const SpherePoint& p);
// original-time density dt/dtau along regularized orbits
double time_density(const RationalField& f, const SpherePoint& p);

enum class EquilibriumKind { Source, Sink, Center, PoleSaddle, DegenerateZero, DegeneratePole };

std::string to_string(EquilibriumKind k);

struct EquilibriumRecord {
    int id = 0;
    SpherePoint location;
    EquilibriumKind kind = EquilibriumKind::Source;
    int multiplicity = 1;
    bool is_pole = false;
    cplx linearization = 0.0;  // f'(e) at a zero; anti-holomorphic coefficient alpha+i beta at a pole
    double local_scale = 1.0;  // distance to the nearest other equilibrium, in the owning chart
};

struct Classification {
    std::vector<EquilibriumRecord> records;   // zeros, then poles, then infinity if not regular there
    bool infinity_regular = true;
    const EquilibriumRecord* at(int id) const { return &records[id]; }
};

Classification classify(const RationalField& f, double tol_class = 1e-9);

// residues eta_j = 1/f'(e_j) of omega = Q/P dw at the finite simple zeros
std::vector<cplx> residues(const RationalField& f);

struct SaddleFrame {
    cplx coeff;        // alpha + i beta of the anti-holomorphic linearization
    double lambda;     // |coeff|, the eigenvalue magnitude
    cplx unstable;     // unit eigendirections in the owning chart
    cplx stable;
};

// frame of the saddle at classification record `id` (a simple pole, possibly at infinity)
SaddleFrame saddle_frame(const RationalField& f, const Classification& cls, int id);

struct HamiltonianData {
    Poly F;                       // F' = -conj(a)*Q, F(0) = 0
    std::vector<double> saddle_H; // H = Im F at the roots of Q
    bool distinct = true;
};

HamiltonianData hamiltonian_data(const RationalField& f);

}  // namespace sphereflow
