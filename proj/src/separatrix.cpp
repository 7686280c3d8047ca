#include "sphereflow/separatrix.hpp"

#include "sphereflow/nondeg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphereflow {

std::string to_string(SepColor c) { return c == SepColor::Blue ? "blue" : "red"; }

namespace {

double mod2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

}  // namespace

BoundarySaddleSet boundary_saddles(const RationalField& f) {
    BoundarySaddleSet out;
    const int mu = f.inf_mult;
    if (mu >= -1 && mu <= 1) return out;   // infinity regular or a simple equilibrium

    const double arga = std::arg(f.a);
    if (mu <= -2) {
        // hidden pole of order m: the circle carries 2(m+1) saddles.
        // Near z=0 the field is ~ a z^{2-D} with D = m+2; writing z = r e^{-i alpha},
        // r' - i r alpha' = -a r^{2-D} e^{i(D-1) alpha}. Zero angular speed at
        // alpha_k = ((k-1)pi - arg a)/(D-1); r' > 0 (blow-down, blue) at even k.
        const int m = -mu;
        const int D = m + 2;
        for (int k = 1; k <= 2 * (D - 1); ++k) {
            BoundarySaddle s;
            s.angle = mod2pi(((k - 1) * M_PI - arga) / (D - 1));
            s.color = (k % 2 == 0) ? SepColor::Blue : SepColor::Red;
            out.saddles.push_back(s);
        }
    } else {
        // hidden zero of order mu: 2(mu-1) nodes alternating sink/source.
        // Near z=0 the field is ~ -a z^mu; nodes at alpha_j = (j pi + arg a)/(mu-1),
        // radially attracting (sinks, blue terminals) at even j.
        out.node_like = true;
        for (int j = 0; j < 2 * (mu - 1); ++j) {
            BoundarySaddle s;
            s.angle = mod2pi((j * M_PI + arga) / (mu - 1));
            s.color = (j % 2 == 0) ? SepColor::Blue : SepColor::Red;
            out.saddles.push_back(s);
        }
    }
    std::sort(out.saddles.begin(), out.saddles.end(),
              [](const BoundarySaddle& a, const BoundarySaddle& b) { return a.angle < b.angle; });
    for (size_t i = 0; i < out.saddles.size(); ++i) out.saddles[i].label = static_cast<int>(i);
    return out;
}

namespace {

void resolve_terminal(const Classification& cls, const BoundarySaddleSet& bset, Separatrix& sep) {
    const auto k = sep.traj.verdict.kind;
    if (k != TerminalKind::ConvergedTo && k != TerminalKind::ReachedSaddle) return;
    sep.terminal_equilibrium = sep.traj.verdict.equilibrium_id;
    const EquilibriumRecord& r = *cls.at(sep.terminal_equilibrium);
    if (!bset.node_like || !r.location.is_infinity()) return;

    // landed on the node circle: read off the asymptotic direction
    sep.terminal_at_infinity = true;
    const auto& last = sep.traj.samples.back();
    cplx z = last.chart_z ? last.v : 1.0 / last.v;
    sep.terminal_angle = mod2pi(-std::arg(z));
    double best = 1e300;
    for (const auto& node : bset.saddles) {
        double gap = std::abs(mod2pi(node.angle - sep.terminal_angle + M_PI) - M_PI);
        if (gap < best) {
            best = gap;
            sep.terminal_boundary_label = node.label;
        }
    }
}

void flag_suspicious(const Classification& cls, const SeparatrixOptions& opt, Separatrix& sep) {
    for (const auto& r : cls.records) {
        if (r.kind != EquilibriumKind::PoleSaddle) continue;
        if (r.id == sep.pole_id || r.id == sep.terminal_equilibrium) continue;
        if (sep.traj.min_equilibrium_distance[r.id] < opt.saddle_suspicion * r.local_scale)
            sep.suspicious = true;
    }
}

}  // namespace

SeparatrixSet trace_separatrices(const RationalField& f, const Classification& cls,
                                 const SeparatrixOptions& opt) {
    SeparatrixSet out;
    out.boundary = boundary_saddles(f);

    auto run = [&](SpherePoint seed, int direction) {
        FlowOptions fo = opt.flow;
        fo.direction = direction;
        fo.detect_periodic = false;
        fo.detect_convergence = true;
        fo.allow_start_in_ball = true;
        return integrate(f, cls, seed, fo);
    };

    int next_id = 0;
    for (const auto& r : cls.records) {
        if (r.kind != EquilibriumKind::PoleSaddle) continue;
        const SaddleFrame fr = saddle_frame(f, cls, r.id);
        const double delta = opt.seed_offset * r.local_scale;
        for (int pass = 0; pass < 2; ++pass) {
            const SepColor color = pass == 0 ? SepColor::Blue : SepColor::Red;
            const cplx dir = pass == 0 ? fr.unstable : fr.stable;
            for (int branch = 0; branch < 2; ++branch) {
                Separatrix s;
                s.id = next_id++;
                s.color = color;
                s.pole_id = r.id;
                s.branch = branch;
                const cplx seed = r.location.v + (branch == 0 ? 1.0 : -1.0) * delta * dir;
                s.traj = run({seed, r.location.chart_z}, color == SepColor::Blue ? +1 : -1);
                resolve_terminal(cls, out.boundary, s);
                flag_suspicious(cls, opt, s);
                out.seps.push_back(std::move(s));
            }
        }
    }

    if (!out.boundary.node_like) {
        for (const auto& bs : out.boundary.saddles) {
            Separatrix s;
            s.id = next_id++;
            s.color = bs.color;
            s.boundary_label = bs.label;
            const cplx seed = std::polar(opt.boundary_seed_r, -bs.angle);
            s.traj = run({seed, true}, bs.color == SepColor::Blue ? +1 : -1);
            resolve_terminal(cls, out.boundary, s);
            flag_suspicious(cls, opt, s);
            out.seps.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

// magnitude |w| of a sample, huge when at infinity
double w_mag(const TrajectorySample& s) {
    const double m = std::abs(s.v);
    if (!s.chart_z) return m;
    return m < 1e-280 ? 1e300 : 1.0 / m;
}

}  // namespace

CrossingReport crossing_angles(const RationalField& f, const Classification& cls,
                               const SeparatrixSet& seps, double rho) {
    (void)cls;
    CrossingReport rep;

    int sign0 = 0;
    for (int j = 0; j < 64; ++j) {
        const cplx w = std::polar(rho, 2.0 * M_PI * j / 64.0);
        const cplx fr = eval_regularized(f, SpherePoint::from_w(w));
        const double radial = (std::conj(w) * fr).real();
        const int sg = radial > 0.0 ? 1 : (radial < 0.0 ? -1 : 0);
        if (sg == 0) { rep.transversal = false; continue; }
        if (sign0 == 0) sign0 = sg;
        else if (sg != sign0) rep.transversal = false;
    }

    for (const auto& sep : seps.seps) {
        const auto& sm = sep.traj.samples;
        const double dirsign = sep.traj.direction >= 0 ? 1.0 : -1.0;
        for (size_t i = 0; i + 1 < sm.size(); ++i) {
            const double g0 = w_mag(sm[i]) - rho, g1 = w_mag(sm[i + 1]) - rho;
            if (g0 == 0.0 || g0 * g1 >= 0.0) continue;

            // redo the bracketing step from sample i in its chart, Newton on |w|-rho
            const bool cz = sm[i].chart_z;
            const double L = std::abs(sm[i + 1].tau - sm[i].tau);
            auto vel = [&](cplx v) { return dirsign * eval_regularized(f, {v, cz}); };
            auto rk4_to = [&](double t) {
                cplx z = sm[i].v;
                const int nsub = 8;
                const double h = t / nsub;
                for (int s = 0; s < nsub; ++s) {
                    const cplx c1 = vel(z);
                    const cplx c2 = vel(z + 0.5 * h * c1);
                    const cplx c3 = vel(z + 0.5 * h * c2);
                    const cplx c4 = vel(z + h * c3);
                    z += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
                }
                return z;
            };
            double t = L * g0 / (g0 - g1);
            for (int it = 0; it < 8; ++it) {
                const cplx v = rk4_to(t);
                const cplx w = cz ? 1.0 / v : v;
                const double g = std::abs(w) - rho;
                // d|w|/dt in the stepping chart
                cplx dw = vel(v);
                if (cz) dw = -dw / (v * v);
                const double gp = (std::conj(w) * dw).real() / std::abs(w);
                if (std::abs(gp) < 1e-300) break;
                t = std::clamp(t - g / gp, 0.0, L);
            }
            const cplx v = rk4_to(t);
            const cplx w = cz ? 1.0 / v : v;
            Crossing c;
            c.separatrix_id = sep.id;
            c.angle = mod2pi(std::arg(w));
            c.radius = std::abs(w);
            rep.crossings.push_back(c);
        }
    }
    return rep;
}

namespace {

cplx seed_tail(const RationalField& f, const Classification& cls, const Separatrix& sep) {
    const cplx seed = sep.traj.samples.front().v;
    const bool cz = sep.traj.samples.front().chart_z;
    if (sep.pole_id >= 0) {
        const EquilibriumRecord& r = *cls.at(sep.pole_id);
        return integrate_omega_segment(f, r.location.v, seed, r.location.chart_z);
    }
    if (sep.boundary_label < 0) throw std::invalid_argument("separatrix has no origin");
    if (!cz) throw std::logic_error("boundary seed not in chart z");
    return integrate_omega_segment(f, 0.0, seed, true);
}

}  // namespace

double time_to_origin(const RationalField& f, const Classification& cls,
                      const Separatrix& sep, size_t sample_index) {
    if (sample_index >= sep.traj.samples.size())
        throw std::out_of_range("time_to_origin: sample index");
    const double t_ode = std::abs(sep.traj.samples[sample_index].t_orig);
    return t_ode + std::abs(seed_tail(f, cls, sep).real());
}

cplx omega_to_origin(const RationalField& f, const Classification& cls,
                     const Separatrix& sep, size_t sample_index) {
    if (sample_index >= sep.traj.samples.size())
        throw std::out_of_range("omega_to_origin: sample index");
    cplx total = seed_tail(f, cls, sep);
    const auto& sm = sep.traj.samples;
    for (size_t i = 0; i + 1 <= sample_index; ++i) {
        const auto& A = sm[i];
        const auto& B = sm[i + 1];
        if (A.chart_z == B.chart_z) {
            total += integrate_omega_segment(f, A.v, B.v, A.chart_z);
        } else {
            // one sample on each side of the seam; both are representable in chart z
            const cplx az = A.chart_z ? A.v : 1.0 / A.v;
            const cplx bz = B.chart_z ? B.v : 1.0 / B.v;
            total += integrate_omega_segment(f, az, bz, true);
        }
    }
    // red traces run against the flow; orient the integral as elapsed time
    return sep.traj.direction >= 0 ? total : -total;
}

}  // namespace sphereflow
