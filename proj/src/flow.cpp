#include "sphereflow/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sphereflow {

std::string to_string(TerminalKind k) {
    switch (k) {
        case TerminalKind::ConvergedTo: return "ConvergedTo";
        case TerminalKind::ReachedSaddle: return "ReachedSaddle";
        case TerminalKind::Periodic: return "Periodic";
        case TerminalKind::BudgetExhausted: return "BudgetExhausted";
        case TerminalKind::PoleClearanceStop: return "PoleClearanceStop";
        default: return "StepUnderflow";
    }
}

namespace {

using State = std::array<double, 3>;   // (Re v, Im v, t_orig)

struct Rhs {
    const RationalField* f;
    double theta = 0.0;
    bool regularized = true;
    int direction = +1;

    State operator()(const State& y, bool chart_z) const {
        const cplx v(y[0], y[1]);
        const SpherePoint p{v, chart_z};
        cplx dv;
        double ds;
        if (regularized) {
            dv = eval_regularized(*f, p);
            ds = time_density(*f, p);
        } else {
            dv = std::polar(1.0, theta) * eval_unregularized(*f, p);
            ds = 1.0;
        }
        const double dir = static_cast<double>(direction);
        return {dir * dv.real(), dir * dv.imag(), dir * ds};
    }
};

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

struct StepResult {
    State y;
    double err;   // scaled error norm
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
    State out = y;
    for (const auto& [c, k] : ks)
        for (int i = 0; i < 3; ++i) out[i] += h * c * (*k)[i];
    return out;
}

StepResult dopri_step(const Rhs& rhs, const State& y, bool chart_z, double h,
                      double atol, double rtol, const State& k1) {
    const State k2 = rhs(axpy(y, h, {{A21, &k1}}), chart_z);
    const State k3 = rhs(axpy(y, h, {{A31, &k1}, {A32, &k2}}), chart_z);
    const State k4 = rhs(axpy(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}), chart_z);
    const State k5 = rhs(axpy(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}), chart_z);
    const State k6 = rhs(axpy(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}), chart_z);
    const State y5 = axpy(y, h, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    const State k7 = rhs(y5, chart_z);

    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 3.0);
    // an overshoot past the overflow range of the prefactor turns the estimate
    // into 0*inf; treat any non-finite step as a hard rejection
    if (!std::isfinite(err) || !std::isfinite(y5[0]) || !std::isfinite(y5[1])) err = 1e12;
    return {y5, err};
}

// distance from a chart point to an equilibrium record, measured in the record's chart
double record_distance(const EquilibriumRecord& r, cplx v, bool chart_z) {
    if (!r.location.chart_z) {
        cplx w;
        if (!chart_z) w = v;
        else if (std::abs(v) < 1e-150) return 1e300;
        else w = 1.0 / v;
        return std::abs(w - r.location.v);
    }
    cplx z;
    if (chart_z) z = v;
    else if (std::abs(v) < 1e-150) return 1e300;
    else z = 1.0 / v;
    return std::abs(z - r.location.v);
}

}  // namespace

Trajectory integrate(const RationalField& f, const Classification& cls, SpherePoint start,
                     const FlowOptions& opt) {
    Trajectory tr;
    tr.direction = opt.direction;
    tr.theta = opt.theta_t;

    Rhs rhs{&f, opt.theta_t, opt.theta_t == 0.0 && !opt.unregularized, opt.direction};

    const size_t nrec = cls.records.size();
    tr.min_equilibrium_distance.assign(nrec, 1e300);
    std::vector<double> conv_radius(nrec), last_dist(nrec, 1e300);
    std::vector<int> streak(nrec, 0);
    for (size_t i = 0; i < nrec; ++i) conv_radius[i] = opt.conv_factor * cls.records[i].local_scale;

    if (opt.detect_convergence && !opt.allow_start_in_ball)
        for (size_t i = 0; i < nrec; ++i)
            if (record_distance(cls.records[i], start.v, start.chart_z) < conv_radius[i])
                throw std::invalid_argument("integrate: start lies inside an equilibrium convergence ball");

    bool chart_z = start.chart_z;
    State y{start.v.real(), start.v.imag(), 0.0};
    double sigma = 0.0;
    double h = 0.0;

    // Poincare section data in the start chart
    const cplx p0 = start.v;
    const bool p0_chart = start.chart_z;
    cplx nhat = 0.0;
    {
        const State d0 = rhs(y, chart_z);
        const cplx v0(d0[0], d0[1]);
        if (std::abs(v0) > 0.0) nhat = v0 / std::abs(v0);
        double reach = 1e-3 * (1.0 + std::abs(start.v));
        for (size_t i = 0; i < nrec; ++i)
            reach = std::min(reach,
                             0.25 * record_distance(cls.records[i], start.v, start.chart_z));
        h = reach / (std::abs(v0) + 1e-300);
        h = std::min(h, opt.t_max);
    }
    const double closure_abs = opt.closure_tol * f.scene_scale;
    bool armed = false;
    double g_prev = 0.0;

    auto push_sample = [&]() {
        tr.samples.push_back({opt.direction * sigma, y[2], cplx(y[0], y[1]), chart_z});
    };
    push_sample();

    auto finish = [&](TerminalKind k, int id, double period, const std::string& note) {
        tr.verdict.kind = k;
        tr.verdict.equilibrium_id = id;
        tr.verdict.period = period;
        tr.verdict.note = note;
        tr.original_time = y[2];
    };

    State k1 = rhs(y, chart_z);
    long steps = 0;
    while (true) {
        if (steps++ >= opt.max_steps || sigma >= opt.t_max) {
            finish(TerminalKind::BudgetExhausted, -1, 0.0, "");
            return tr;
        }
        h = std::min(h, opt.t_max - sigma);
        if (h < 1e-14 * std::max(1.0, sigma)) {
            if (opt.t_max - sigma < 1e-10 * std::max(1.0, opt.t_max)) {
                finish(TerminalKind::BudgetExhausted, -1, 0.0, "");
                return tr;
            }
            finish(TerminalKind::StepUnderflow, -1, 0.0, "step size underflow");
            return tr;
        }

        StepResult st = dopri_step(rhs, y, chart_z, h, opt.abs_tol, opt.rel_tol, k1);

        // displacement cap: stay well inside the local structure scale
        const cplx dv(st.y[0] - y[0], st.y[1] - y[1]);
        double dmin = 1e300;
        for (size_t i = 0; i < nrec; ++i)
            dmin = std::min(dmin, record_distance(cls.records[i], cplx(y[0], y[1]), chart_z));
        const double dx_cap = std::max(0.25 * dmin, 1e-13 * (1.0 + std::abs(cplx(y[0], y[1]))));
        if (std::abs(dv) > dx_cap && st.err <= 1.0) st.err = std::max(st.err, std::pow(std::abs(dv) / dx_cap, 5.0));

        if (st.err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(st.err, -0.2));
            continue;
        }

        const double sigma_new = sigma + h;
        const State y_old = y;
        const double g_old = g_prev;
        y = st.y;
        sigma = sigma_new;
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(st.err, 1e-10), -0.2)));

        // chart switch with hysteresis
        cplx v(y[0], y[1]);
        const bool step_in_p0_chart = (chart_z == p0_chart);
        if (std::abs(v) > 1.25) {
            v = 1.0 / v;
            y[0] = v.real();
            y[1] = v.imag();
            chart_z = !chart_z;
        }
        k1 = rhs(y, chart_z);
        push_sample();

        // pole clearance in un-regularized mode
        if (!rhs.regularized) {
            const double clear = opt.pole_clearance * f.scene_scale;
            for (const auto& r : cls.records) {
                if (!r.is_pole) continue;
                if (record_distance(r, v, chart_z) < clear) {
                    finish(TerminalKind::PoleClearanceStop, r.id, 0.0, "pole clearance reached");
                    return tr;
                }
            }
        }

        // convergence events
        bool converged = false;
        for (size_t i = 0; i < nrec; ++i) {
            const double dist = record_distance(cls.records[i], v, chart_z);
            tr.min_equilibrium_distance[i] = std::min(tr.min_equilibrium_distance[i], dist);
            if (!opt.detect_convergence) continue;
            if (dist < conv_radius[i] && dist < last_dist[i]) ++streak[i];
            else streak[i] = 0;
            last_dist[i] = dist;
            if (streak[i] >= opt.contraction_steps) {
                const auto& r = cls.records[i];
                const bool saddle = r.is_pole;
                finish(saddle ? TerminalKind::ReachedSaddle : TerminalKind::ConvergedTo,
                       r.id, 0.0, "");
                converged = true;
                break;
            }
        }
        if (converged) return tr;

        // Poincare return in the start chart
        if (opt.detect_periodic && chart_z == p0_chart && std::abs(v) < 4.0 * (1.0 + std::abs(p0))) {
            const cplx rel = v - p0;
            const double g = (std::conj(nhat) * rel).real();
            if (!armed && std::abs(rel) > 10.0 * closure_abs) armed = true;
            if (armed && step_in_p0_chart && g_old < 0.0 && g >= 0.0 &&
                std::abs(rel) < 0.5 * (1.0 + std::abs(p0))) {
                // redo the bracketing step in fixed RK4 substeps, Newton on g
                const auto& sa = tr.samples[tr.samples.size() - 2];
                const auto& sb = tr.samples[tr.samples.size() - 1];
                const double step_len = std::abs(sb.tau - sa.tau);
                double t_guess = step_len * (0.0 - g_old) / (g - g_old);
                auto rk4_to = [&](double tt) {
                    State z = y_old;
                    const int nsub = 8;
                    const double hh = tt / nsub;
                    for (int s = 0; s < nsub; ++s) {
                        const State c1 = rhs(z, p0_chart);
                        const State c2 = rhs(axpy(z, hh, {{0.5, &c1}}), p0_chart);
                        const State c3 = rhs(axpy(z, hh, {{0.5, &c2}}), p0_chart);
                        const State c4 = rhs(axpy(z, hh, {{1.0, &c3}}), p0_chart);
                        State nz = z;
                        for (int i = 0; i < 3; ++i)
                            nz[i] += hh / 6.0 * (c1[i] + 2 * c2[i] + 2 * c3[i] + c4[i]);
                        z = nz;
                    }
                    return z;
                };
                for (int it = 0; it < 6; ++it) {
                    const State zc = rk4_to(t_guess);
                    const cplx vc(zc[0], zc[1]);
                    const double gc = (std::conj(nhat) * (vc - p0)).real();
                    const State dc = rhs(zc, p0_chart);
                    const double gp = (std::conj(nhat) * cplx(dc[0], dc[1])).real();
                    if (std::abs(gp) < 1e-300) break;
                    t_guess -= gc / gp;
                    t_guess = std::clamp(t_guess, 0.0, step_len);
                }
                const State zc = rk4_to(t_guess);
                const cplx vc(zc[0], zc[1]);
                if (std::abs(vc - p0) < closure_abs) {
                    y = zc;
                    tr.samples.back() = {opt.direction * (sigma - step_len + t_guess), zc[2], vc, p0_chart};
                    finish(TerminalKind::Periodic, -1, std::abs(zc[2]), "");
                    return tr;
                }
            }
            g_prev = g;
        } else {
            g_prev = 0.0;
        }
    }
}

SpherePoint flow_map(const RationalField& f, const Classification& cls, SpherePoint start,
                     double t, double theta, double rel_tol) {
    FlowOptions opt;
    opt.rel_tol = rel_tol;
    opt.t_max = t;
    opt.theta_t = theta;
    opt.unregularized = true;
    opt.detect_periodic = false;
    opt.detect_convergence = false;
    Trajectory tr = integrate(f, cls, start, opt);
    if (tr.verdict.kind == TerminalKind::PoleClearanceStop)
        throw std::runtime_error("flow_map: existence domain left (pole reached)");
    if (tr.verdict.kind != TerminalKind::BudgetExhausted)
        throw std::runtime_error("flow_map: integration stopped early");
    const auto& s = tr.samples.back();
    return {s.v, s.chart_z};
}

double commutation_defect(const RationalField& f, const Classification& cls, cplx w0,
                          double t1, double t2, double rel_tol) {
    const SpherePoint a1 = flow_map(f, cls, SpherePoint::from_w(w0), t1, 0.0, rel_tol);
    const SpherePoint a2 = flow_map(f, cls, a1, t2, M_PI / 2.0, rel_tol);
    const SpherePoint b1 = flow_map(f, cls, SpherePoint::from_w(w0), t2, M_PI / 2.0, rel_tol);
    const SpherePoint b2 = flow_map(f, cls, b1, t1, 0.0, rel_tol);
    return chordal_distance(a2, b2);
}

cplx cycle_period(const RationalField& f, const std::vector<int>& J) {
    const auto eta = residues(f);
    cplx sum = 0.0;
    for (int j : J) {
        if (j < 0 || j >= static_cast<int>(eta.size()))
            throw std::invalid_argument("cycle_period: zero index out of range");
        sum += eta[j];
    }
    return cplx(0.0, 2.0 * M_PI) * sum;
}

namespace {

int winding_number(const std::vector<cplx>& loop, cplx p) {
    double total = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        const cplx a = loop[i] - p, b = loop[(i + 1) % loop.size()] - p;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace

CycleCheck cycle_degrees(const RationalField& f, const std::vector<cplx>& loop) {
    CycleCheck c;
    for (const auto& e : f.zeros)
        if (winding_number(loop, e) != 0) ++c.d_J;
    for (const auto& e : f.poles)
        if (winding_number(loop, e) != 0) ++c.dp_J;
    c.brouwer_ok = (c.dp_J == c.d_J - 1);
    return c;
}

}  // namespace sphereflow
