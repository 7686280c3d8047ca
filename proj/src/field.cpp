#include "sphereflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphereflow {

cplx SpherePoint::w() const {
    if (!chart_z) return v;
    if (v == cplx(0.0)) return cplx(1e300, 0.0);
    return 1.0 / v;
}

SpherePoint SpherePoint::other_chart() const {
    if (v == cplx(0.0)) return {0.0, !chart_z};  // maps 0 <-> infinity
    return {1.0 / v, !chart_z};
}

double chordal_distance(cplx w1, cplx w2) {
    // hypot keeps the factors finite for the huge chart sentinels
    return std::abs(w1 - w2) / (std::hypot(1.0, std::abs(w1)) * std::hypot(1.0, std::abs(w2)));
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    // express both in the chart where they stay bounded
    auto in_chart = [](const SpherePoint& s, bool chart_z) {
        if (s.chart_z == chart_z) return s.v;
        return s.v == cplx(0.0) ? cplx(1e300) : 1.0 / s.v;
    };
    const cplx pw = in_chart(p, false), qw = in_chart(q, false);
    if (std::abs(pw) < 2.0 && std::abs(qw) < 2.0) return chordal_distance(pw, qw);
    return chordal_distance(in_chart(p, true), in_chart(q, true));
}

Mobius Mobius::compose(const Mobius& inner) const {
    return {A * inner.A + B * inner.C, A * inner.B + B * inner.D,
            C * inner.A + D * inner.C, C * inner.B + D * inner.D};
}

Mobius::Image Mobius::map(cplx w) const {
    const cplx num = A * w + B, den = C * w + D;
    if (std::abs(den) <= 1e-13 * (std::abs(num) + 1e-300)) return {0.0, true};
    return {num / den, false};
}

Mobius::Image Mobius::map_infinity() const {
    if (std::abs(C) <= 1e-13 * std::abs(A)) return {0.0, true};
    return {A / C, false};
}

cplx Mobius::derivative(cplx w) const {
    const cplx den = C * w + D;
    return det() / (den * den);
}

std::string to_string(FieldMode m) {
    switch (m) {
        case FieldMode::Normalized: return "normalized";
        case FieldMode::Polynomial: return "polynomial";
        case FieldMode::AntiPolynomial: return "antipolynomial";
        default: return "general";
    }
}

std::string to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Source: return "Source";
        case EquilibriumKind::Sink: return "Sink";
        case EquilibriumKind::Center: return "Center";
        case EquilibriumKind::PoleSaddle: return "PoleSaddle";
        case EquilibriumKind::DegenerateZero: return "DegenerateZero";
        default: return "DegeneratePole";
    }
}

namespace {

Poly shift_up(const Poly& p, int k) {
    std::vector<cplx> c(p.coeffs.size() + k, cplx(0.0));
    for (size_t i = 0; i < p.coeffs.size(); ++i) c[i + k] = p.coeffs[i];
    return Poly(std::move(c));
}

}  // namespace

RationalField build_field(const std::vector<cplx>& zeros, const std::vector<cplx>& poles,
                          cplx a, bool allow_multiple) {
    if (a == cplx(0.0)) throw std::invalid_argument("build_field: prefactor a must be nonzero");

    RationalField f;
    f.a = a;
    f.zeros = zeros;
    f.poles = poles;
    f.d = static_cast<int>(zeros.size());
    f.dp = static_cast<int>(poles.size());

    double scale = 1.0;
    for (const auto& e : zeros) scale = std::max(scale, std::abs(e));
    for (const auto& e : poles) scale = std::max(scale, std::abs(e));
    f.scene_scale = scale;

    const double same = 1e-12 * scale;
    for (const auto& e : zeros)
        for (const auto& p : poles)
            if (std::abs(e - p) <= same)
                throw std::invalid_argument("build_field: coincident zero and pole (non-coprime)");
    if (!allow_multiple) {
        auto check_distinct = [&](const std::vector<cplx>& v, const char* what) {
            for (size_t i = 0; i < v.size(); ++i)
                for (size_t j = i + 1; j < v.size(); ++j)
                    if (std::abs(v[i] - v[j]) <= same)
                        throw std::invalid_argument(std::string("build_field: duplicate ") + what);
        };
        check_distinct(zeros, "zeros");
        check_distinct(poles, "poles");
    }

    f.P = from_roots(zeros, a);
    f.Q = from_roots(poles, 1.0);
    f.kappa = std::max(f.d - 2, f.dp);
    f.inf_mult = f.dp - (f.d - 2);

    const Poly Pt = reverse(f.P) * cplx(-1.0);   // -z^d P(1/z)
    const Poly Qt = reverse(f.Q);                //  z^d' Q(1/z)
    f.Pz = shift_up(Pt, std::max(0, 2 - f.d + f.dp));
    f.Qz = shift_up(Qt, std::max(0, f.d - 2 - f.dp));

    if (f.dp == f.d - 2) f.mode = FieldMode::Normalized;
    else if (f.dp == 0) f.mode = FieldMode::Polynomial;
    else if (f.d == 0) f.mode = FieldMode::AntiPolynomial;
    else f.mode = FieldMode::General;
    return f;
}

RationalField from_numerator(const Poly& P) {
    RootSet rs = find_roots(P);
    std::vector<cplx> zeros;
    for (const auto& r : rs.roots)
        for (int k = 0; k < r.multiplicity; ++k) zeros.push_back(r.location);
    return build_field(zeros, {}, P.leading(), true);
}

cplx eval_regularized(const RationalField& f, const SpherePoint& p) {
    const double fac = std::pow(1.0 + std::norm(p.v), -f.kappa);
    if (!p.chart_z) return fac * evaluate(f.P, p.v) * std::conj(evaluate(f.Q, p.v));
    return fac * evaluate(f.Pz, p.v) * std::conj(evaluate(f.Qz, p.v));
}

cplx eval_unregularized(const RationalField& f, const SpherePoint& p) {
    if (!p.chart_z) return evaluate(f.P, p.v) / evaluate(f.Q, p.v);
    return evaluate(f.Pz, p.v) / evaluate(f.Qz, p.v);
}

double time_density(const RationalField& f, const SpherePoint& p) {
    const double fac = std::pow(1.0 + std::norm(p.v), -f.kappa);
    const cplx den = p.chart_z ? evaluate(f.Qz, p.v) : evaluate(f.Q, p.v);
    return fac * std::norm(den);
}

namespace {

struct Grouped {
    cplx location;
    int mult;
};

std::vector<Grouped> group_points(const std::vector<cplx>& pts, double same) {
    std::vector<Grouped> out;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Grouped g{pts[i], 1};
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (!used[j] && std::abs(pts[i] - pts[j]) <= same) {
                used[j] = true;
                ++g.mult;
            }
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace

Classification classify(const RationalField& f, double tol_class) {
    Classification cls;
    const double same = 1e-9 * f.scene_scale;
    const auto zg = group_points(f.zeros, same);
    const auto pg = group_points(f.poles, same);

    int id = 0;
    for (const auto& g : zg) {
        EquilibriumRecord r;
        r.id = id++;
        r.location = SpherePoint::from_w(g.location);
        r.multiplicity = g.mult;
        r.is_pole = false;
        if (g.mult > 1) {
            r.kind = EquilibriumKind::DegenerateZero;
        } else {
            const cplx lam = evaluate(f.P, g.location, 1) / evaluate(f.Q, g.location);
            r.linearization = lam;
            const double cut = tol_class * std::abs(lam);
            if (lam.real() > cut) r.kind = EquilibriumKind::Source;
            else if (lam.real() < -cut) r.kind = EquilibriumKind::Sink;
            else r.kind = EquilibriumKind::Center;
        }
        cls.records.push_back(r);
    }
    for (const auto& g : pg) {
        EquilibriumRecord r;
        r.id = id++;
        r.location = SpherePoint::from_w(g.location);
        r.multiplicity = g.mult;
        r.is_pole = true;
        if (g.mult > 1) {
            r.kind = EquilibriumKind::DegeneratePole;
        } else {
            r.kind = EquilibriumKind::PoleSaddle;
            const double fac = std::pow(1.0 + std::norm(g.location), -f.kappa);
            r.linearization = fac * evaluate(f.P, g.location) * std::conj(evaluate(f.Q, g.location, 1));
        }
        cls.records.push_back(r);
    }
    cls.infinity_regular = (f.inf_mult == 0);
    if (f.inf_mult != 0) {
        EquilibriumRecord r;
        r.id = id++;
        r.location = SpherePoint::infinity();
        r.multiplicity = std::abs(f.inf_mult);
        r.is_pole = f.inf_mult < 0;
        if (f.inf_mult > 1) r.kind = EquilibriumKind::DegenerateZero;
        else if (f.inf_mult < -1) r.kind = EquilibriumKind::DegeneratePole;
        else if (f.inf_mult == 1) {
            const cplx lam = evaluate(f.Pz, 0.0, 1) / evaluate(f.Qz, 0.0);
            r.linearization = lam;
            const double cut = tol_class * std::abs(lam);
            if (lam.real() > cut) r.kind = EquilibriumKind::Source;
            else if (lam.real() < -cut) r.kind = EquilibriumKind::Sink;
            else r.kind = EquilibriumKind::Center;
        } else {
            r.kind = EquilibriumKind::PoleSaddle;
            r.linearization = evaluate(f.Pz, 0.0) * std::conj(evaluate(f.Qz, 0.0, 1));
        }
        cls.records.push_back(r);
    }

    // local scales, measured in the owning chart
    for (auto& r : cls.records) {
        double best = -1.0;
        for (const auto& o : cls.records) {
            if (o.id == r.id) continue;
            double dist;
            if (!r.location.chart_z) {
                if (!o.location.chart_z) dist = std::abs(r.location.v - o.location.v);
                else dist = 2.0 * f.scene_scale;  // infinity is far in the w chart
            } else {
                if (o.location.chart_z) dist = std::abs(r.location.v - o.location.v);
                else if (o.location.v == cplx(0.0)) dist = 1.0;
                else dist = std::abs(1.0 / o.location.v);
            }
            best = best < 0.0 ? dist : std::min(best, dist);
        }
        r.local_scale = best < 0.0 ? std::max(1.0, f.scene_scale) : best;
    }
    return cls;
}

std::vector<cplx> residues(const RationalField& f) {
    const double same = 1e-9 * f.scene_scale;
    for (size_t i = 0; i < f.zeros.size(); ++i)
        for (size_t j = i + 1; j < f.zeros.size(); ++j)
            if (std::abs(f.zeros[i] - f.zeros[j]) <= same)
                throw std::invalid_argument("residues: multiple zero detected");
    std::vector<cplx> eta;
    eta.reserve(f.zeros.size());
    for (const auto& e : f.zeros)
        eta.push_back(evaluate(f.Q, e) / evaluate(f.P, e, 1));
    return eta;
}

SaddleFrame saddle_frame(const RationalField& f, const Classification& cls, int id) {
    const EquilibriumRecord& r = cls.records.at(id);
    if (r.kind != EquilibriumKind::PoleSaddle)
        throw std::invalid_argument("saddle_frame: record is not a simple pole saddle");
    (void)f;
    SaddleFrame fr;
    fr.coeff = r.linearization;
    const double alpha = fr.coeff.real(), beta = fr.coeff.imag();
    fr.lambda = std::hypot(alpha, beta);
    if (fr.lambda == 0.0) throw std::invalid_argument("saddle_frame: vanishing linearization");
    cplx u;
    if (alpha >= 0.0) u = cplx(fr.lambda + alpha, beta);
    else u = cplx(beta, fr.lambda - alpha);
    u /= std::abs(u);
    fr.unstable = u;
    fr.stable = cplx(-u.imag(), u.real());
    return fr;
}

HamiltonianData hamiltonian_data(const RationalField& f) {
    if (f.mode != FieldMode::AntiPolynomial)
        throw std::invalid_argument("hamiltonian_data: field is not in anti-polynomial mode");
    HamiltonianData h;
    // F' = -Q_eff with Q_eff = conj(a) Q, so that wdot = a conj(Q) = -grad(Re F) = i grad(Im F)
    const cplx ca = std::conj(f.a);
    std::vector<cplx> F(f.Q.coeffs.size() + 1, cplx(0.0));
    for (size_t k = 0; k < f.Q.coeffs.size(); ++k)
        F[k + 1] = -ca * f.Q.coeffs[k] / static_cast<double>(k + 1);
    h.F = Poly(std::move(F));
    double hscale = 1.0;
    for (const auto& p : f.poles) {
        const double val = evaluate(h.F, p).imag();
        h.saddle_H.push_back(val);
        hscale = std::max(hscale, std::abs(val));
    }
    for (size_t i = 0; i < h.saddle_H.size() && h.distinct; ++i)
        for (size_t j = i + 1; j < h.saddle_H.size(); ++j)
            if (std::abs(h.saddle_H[i] - h.saddle_H[j]) <= 1e-9 * hscale) {
                h.distinct = false;
                break;
            }
    return h;
}

RationalField apply_mobius(const RationalField& f, const Mobius& m) {
    if (std::abs(m.det()) < 1e-300) throw std::invalid_argument("apply_mobius: singular transform");

    std::vector<cplx> new_zeros, new_poles;
    int inf_zero = 0, inf_pole = 0;
    auto push = [&](const Mobius::Image& im, bool pole, int mult) {
        for (int k = 0; k < mult; ++k) {
            if (im.infinite) (pole ? inf_pole : inf_zero) += 1;
            else (pole ? new_poles : new_zeros).push_back(im.w);
        }
    };
    for (const auto& e : f.zeros) push(m.map(e), false, 1);
    for (const auto& e : f.poles) push(m.map(e), true, 1);
    if (f.inf_mult > 0) push(m.map_infinity(), false, f.inf_mult);
    if (f.inf_mult < 0) push(m.map_infinity(), true, -f.inf_mult);

    // prefactor by sampling the pushed-forward field at a well-conditioned point
    const Mobius minv = m.inverse();
    double scale = 1.0;
    for (const auto& e : new_zeros) scale = std::max(scale, std::abs(e));
    for (const auto& e : new_poles) scale = std::max(scale, std::abs(e));
    cplx a_new = 0.0;
    double best_clear = -1.0;
    for (int s = 0; s < 12; ++s) {
        const double ang = 2.0 * M_PI * s / 12.0 + 0.31;
        const cplx zq = 1.37 * scale * cplx(std::cos(ang), std::sin(ang));
        double clear = 1e300;
        for (const auto& e : new_zeros) clear = std::min(clear, std::abs(zq - e));
        for (const auto& e : new_poles) clear = std::min(clear, std::abs(zq - e));
        const Mobius::Image wq = minv.map(zq);
        if (wq.infinite) continue;
        for (const auto& e : f.zeros) clear = std::min(clear, std::abs(wq.w - e) * 1e-2);
        if (clear <= best_clear) continue;

        const cplx fw = evaluate(f.P, wq.w) / evaluate(f.Q, wq.w);
        const cplx target = m.derivative(wq.w) * fw;
        cplx prod = 1.0;
        for (const auto& e : new_zeros) prod *= (zq - e);
        for (const auto& e : new_poles) prod /= (zq - e);
        if (std::abs(prod) < 1e-300) continue;
        a_new = target / prod;
        best_clear = clear;
    }
    if (best_clear < 0.0) throw std::runtime_error("apply_mobius: no usable sample point");

    RationalField g = build_field(new_zeros, new_poles, a_new, true);
    const int nu = g.dp - (g.d - 2);
    if (nu != inf_zero - inf_pole)
        throw std::runtime_error("apply_mobius: divisor bookkeeping mismatch");
    return g;
}

}  // namespace sphereflow
