#include "sphereflow/nondeg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sphereflow {

PathSegment PathSegment::line(cplx a, cplx b) {
    PathSegment s;
    s.kind = Kind::Line;
    s.z0 = a;
    s.z1 = b;
    return s;
}

PathSegment PathSegment::arc(cplx c, double r, double a0, double a1) {
    PathSegment s;
    s.kind = Kind::Arc;
    s.center = c;
    s.radius = r;
    s.angle0 = a0;
    s.angle1 = a1;
    return s;
}

Path polyline(const std::vector<cplx>& pts) {
    Path p;
    for (size_t i = 0; i + 1 < pts.size(); ++i) p.push_back(PathSegment::line(pts[i], pts[i + 1]));
    return p;
}

namespace {

// QUADPACK 7-15 Gauss-Kronrod pair on [-1,1]
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Param {
    std::function<cplx(double)> point;   // t in [0,1]
    std::function<cplx(double)> velocity;
};

Param parametrize(const PathSegment& s) {
    if (s.kind == PathSegment::Kind::Line) {
        const cplx z0 = s.z0, dz = s.z1 - s.z0;
        return {[z0, dz](double t) { return z0 + t * dz; }, [dz](double) { return dz; }};
    }
    const cplx c = s.center;
    const double r = s.radius, a0 = s.angle0, da = s.angle1 - s.angle0;
    return {[c, r, a0, da](double t) {
                const double a = a0 + t * da;
                return c + r * cplx(std::cos(a), std::sin(a));
            },
            [r, a0, da](double t) {
                const double a = a0 + t * da;
                return r * da * cplx(-std::sin(a), std::cos(a));
            }};
}

struct GK {
    cplx kronrod;
    double err;
};

using Integrand = std::function<cplx(cplx)>;

GK gk15(const Param& par, const Integrand& fn, double t0, double t1) {
    const double h = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
    cplx k = 0.0, g = 0.0;
    for (int i = 0; i < 8; ++i) {
        const int reps = (i == 7) ? 1 : 2;
        for (int s = 0; s < reps; ++s) {
            const double x = (s == 0 ? -1.0 : 1.0) * xgk[i];
            const double t = mid + h * x;
            const cplx val = fn(par.point(t)) * par.velocity(t);
            k += wgk[i] * val;
            if (i % 2 == 1) g += wg[i / 2] * val;
        }
    }
    GK out;
    out.kronrod = h * k;
    const cplx gauss = h * g;
    out.err = std::abs(out.kronrod - gauss);
    return out;
}

void adaptive(const Param& par, const Integrand& fn, double t0, double t1,
              double tol, int depth, cplx& acc, double& errsum) {
    const GK g = gk15(par, fn, t0, t1);
    if (g.err < tol || depth > 32) {
        acc += g.kronrod;
        errsum += g.err;
        return;
    }
    const double mid = 0.5 * (t0 + t1);
    adaptive(par, fn, t0, mid, tol * 0.6, depth + 1, acc, errsum);
    adaptive(par, fn, mid, t1, tol * 0.6, depth + 1, acc, errsum);
}

cplx adaptive_segment(const Param& par, const Integrand& fn, double rel_tol) {
    cplx acc = 0.0;
    double errsum = 0.0;
    const GK coarse = gk15(par, fn, 0.0, 1.0);
    const double tol = std::max(rel_tol * std::abs(coarse.kronrod), 1e-300) + 1e-16;
    adaptive(par, fn, 0.0, 1.0, tol, 0, acc, errsum);
    return acc;
}

}  // namespace

cplx integrate_omega(const RationalField& f, const Path& path, double rel_tol, double clearance) {
    const double clear_abs = clearance * f.scene_scale;
    cplx total = 0.0;
    for (const auto& seg : path) {
        const Param par = parametrize(seg);
        // clearance precheck against zeros of P (interior samples; quadrature nodes avoid endpoints)
        for (int i = 1; i < 64; ++i) {
            const double t = i / 64.0;
            const cplx w = par.point(t);
            for (const auto& e : f.zeros)
                if (std::abs(w - e) < clear_abs)
                    throw std::invalid_argument("integrate_omega: path too close to an equilibrium");
        }
        for (double t : {0.0, 1.0}) {
            const cplx w = par.point(t);
            for (const auto& e : f.zeros)
                if (std::abs(w - e) < 1e-13 * f.scene_scale)
                    throw std::invalid_argument("integrate_omega: path endpoint at an equilibrium");
        }
        total += adaptive_segment(par, [&f](cplx w) { return evaluate(f.Q, w) / evaluate(f.P, w); },
                                  rel_tol);
    }
    return total;
}

cplx integrate_omega_segment(const RationalField& f, cplx a, cplx b, bool chart_z, double rel_tol) {
    const Param par = parametrize(PathSegment::line(a, b));
    if (!chart_z)
        return adaptive_segment(par, [&f](cplx w) { return evaluate(f.Q, w) / evaluate(f.P, w); },
                                rel_tol);
    return adaptive_segment(par, [&f](cplx z) { return evaluate(f.Qz, z) / evaluate(f.Pz, z); },
                            rel_tol);
}

PeriodModule period_module(const RationalField& f) {
    PeriodModule pm;
    const cplx twopii(0.0, 2.0 * M_PI);
    for (const auto& eta : residues(f)) pm.generators.push_back(twopii * eta);
    return pm;
}

namespace {

struct SearchState {
    double best = 1e300;
    std::vector<int> best_m;
    bool best_boundary = false;
    long nodes = 0;
    bool capped = false;
};

// near-degenerate generator sets defeat the branch-and-bound pruning; cap the
// work and report the result as inconclusive instead of spinning
constexpr long kLatticeNodeBudget = 4000000;

// order candidate integers around the continuous optimum
std::vector<int> candidate_order(double ideal, int M) {
    std::vector<int> cand;
    const int c = static_cast<int>(std::lround(std::clamp(ideal, -static_cast<double>(M), static_cast<double>(M))));
    cand.push_back(c);
    for (int r = 1; r <= 2 * M; ++r) {
        if (c + r <= M) cand.push_back(c + r);
        if (c - r >= -M) cand.push_back(c - r);
    }
    return cand;
}

}  // namespace

namespace {

// exact min over the box of |y - sum m_j b_j| by meeting two half enumerations
// in the middle; the box coordinates pack into one word (|m_j| <= M <= 31)
PeriodDistance mod_reals_exact(double y, const std::vector<double>& b, int M) {
    const int k = static_cast<int>(b.size());
    const int h = k / 2;
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(M) + 1;

    struct Item {
        double s;
        std::uint64_t pack;
        std::uint8_t linf;
    };
    auto enumerate = [&](int lo, int hi) {
        std::vector<Item> out;
        const int n = hi - lo;
        std::vector<int> m(n, -M);
        for (;;) {
            double s = 0.0;
            std::uint64_t pk = 0;
            int linf = 0;
            for (int j = 0; j < n; ++j) {
                s += m[j] * b[lo + j];
                pk = pk * base + static_cast<std::uint64_t>(m[j] + M);
                linf = std::max(linf, std::abs(m[j]));
            }
            out.push_back({s, pk, static_cast<std::uint8_t>(linf)});
            int j = n - 1;
            while (j >= 0 && m[j] == M) m[j--] = -M;
            if (j < 0) break;
            ++m[j];
        }
        return out;
    };
    auto unpack = [&](std::uint64_t pk, int n, std::vector<int>& into) {
        for (int j = n - 1; j >= 0; --j) {
            into[j] = static_cast<int>(pk % base) - M;
            pk /= base;
        }
    };

    std::vector<Item> A = enumerate(0, h), B = enumerate(h, k);
    // secondary key so the head of each equal-sum run carries the smallest box norm
    std::sort(B.begin(), B.end(), [](const Item& x, const Item& y2) {
        return x.s != y2.s ? x.s < y2.s : x.linf < y2.linf;
    });

    // ties in distance prefer the minimizer deepest inside the box: a tie at the
    // bound must not mask an interior certificate
    double best = 1e300;
    int best_linf = 0;
    std::uint64_t best_a = 0, best_b = 0;
    for (const Item& a : A) {
        const double target = y - a.s;
        auto it = std::lower_bound(B.begin(), B.end(), target,
                                   [](const Item& x, double t) { return x.s < t; });
        for (int off = -1; off <= 0; ++off) {
            auto jt = it + off;
            if (jt < B.begin() || jt >= B.end()) continue;
            while (jt > B.begin() && (jt - 1)->s == jt->s) --jt;
            const double dist = std::abs(a.s + jt->s - y);
            const int linf = std::max<int>(a.linf, jt->linf);
            if (dist < best || (dist == best && linf < best_linf)) {
                best = dist;
                best_linf = linf;
                best_a = a.pack;
                best_b = jt->pack;
            }
        }
    }

    PeriodDistance out;
    out.distance = best;
    out.combination.resize(k, 0);
    std::vector<int> ma(h), mb(k - h);
    unpack(best_a, h, ma);
    unpack(best_b, k - h, mb);
    for (int j = 0; j < h; ++j) out.combination[j] = ma[j];
    for (int j = h; j < k; ++j) out.combination[j] = mb[j - h];
    for (int mj : out.combination)
        if (std::abs(mj) == M) out.boundary = true;
    return out;
}

}  // namespace

PeriodDistance period_distance(cplx value, const PeriodModule& pm, bool mod_reals, int M) {
    const int k = static_cast<int>(pm.generators.size());
    if (k > 12) throw std::invalid_argument("period_distance: too many generators for exact box search");
    PeriodDistance out;
    if (k == 0) {
        out.distance = mod_reals ? std::abs(value.imag()) : std::abs(value);
        return out;
    }

    if (mod_reals && k <= 8 && M <= 31) {
        // the 1-d projection starves the branch-and-bound of pruning power;
        // meet in the middle is exact and fast for the sizes in use
        std::vector<double> b(k);
        for (int i = 0; i < k; ++i) b[i] = pm.generators[i].imag();
        return mod_reals_exact(value.imag(), b, M);
    }

    // sort generators by relevant magnitude, largest last (solved in closed form)
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    auto mag = [&](int i) {
        return mod_reals ? std::abs(pm.generators[i].imag()) : std::abs(pm.generators[i]);
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return mag(a) < mag(b); });

    std::vector<cplx> g(k);
    for (int i = 0; i < k; ++i) g[i] = pm.generators[order[i]];

    // suffix reach bounds for pruning
    std::vector<double> reach(k + 1, 0.0);
    for (int i = k - 1; i >= 0; --i) reach[i] = reach[i + 1] + M * mag(order[i]);

    SearchState st;
    std::vector<int> m(k, 0);

    std::function<void(int, cplx)> rec = [&](int idx, cplx rem) {
        if (st.capped || ++st.nodes > kLatticeNodeBudget) {
            st.capped = true;
            return;
        }
        const double lower = (mod_reals ? std::abs(rem.imag()) : std::abs(rem)) - reach[idx];
        if (lower >= st.best) return;

        auto consider = [&](double dist) {
            if (dist < st.best) {
                st.best = dist;
                st.best_m = m;
                st.best_boundary = false;
                for (int v : m)
                    if (std::abs(v) == M) st.best_boundary = true;
            }
        };

        if (mod_reals) {
            if (idx == k - 1) {
                const double b = g[idx].imag();
                if (std::abs(b) < 1e-300) {
                    m[idx] = 0;
                    consider(std::abs(rem.imag()));
                } else {
                    const double ideal = rem.imag() / b;
                    for (int dm = -1; dm <= 1; ++dm) {
                        const int mm = static_cast<int>(std::clamp(std::lround(ideal) + dm,
                                                                   static_cast<long>(-M), static_cast<long>(M)));
                        m[idx] = mm;
                        consider(std::abs(rem.imag() - mm * b));
                    }
                }
                return;
            }
            for (int mm : candidate_order(g[idx].imag() == 0.0 ? 0.0 : rem.imag() / g[idx].imag(), M)) {
                m[idx] = mm;
                rec(idx + 1, rem - static_cast<double>(mm) * g[idx]);
            }
            m[idx] = 0;
            return;
        }

        if (idx >= k - 2) {
            // close with one or two generators in closed form
            if (idx == k - 1) {
                const cplx gg = g[idx];
                const double n2 = std::norm(gg);
                const double ideal = n2 < 1e-300 ? 0.0 : (rem.real() * gg.real() + rem.imag() * gg.imag()) / n2;
                for (int dm = -1; dm <= 1; ++dm) {
                    const int mm = static_cast<int>(std::clamp(std::lround(ideal) + dm,
                                                               static_cast<long>(-M), static_cast<long>(M)));
                    m[idx] = mm;
                    consider(std::abs(rem - static_cast<double>(mm) * gg));
                }
                return;
            }
            const cplx g1 = g[idx], g2 = g[idx + 1];
            const double det = g1.real() * g2.imag() - g1.imag() * g2.real();
            if (std::abs(det) < 1e-12 * std::abs(g1) * std::abs(g2)) {
                // near-collinear: fall through one level
                for (int mm : candidate_order(std::norm(g1) < 1e-300 ? 0.0
                                                : (rem.real() * g1.real() + rem.imag() * g1.imag()) / std::norm(g1),
                                              M)) {
                    m[idx] = mm;
                    rec(idx + 1, rem - static_cast<double>(mm) * g1);
                }
                m[idx] = 0;
                return;
            }
            const double x = (rem.real() * g2.imag() - rem.imag() * g2.real()) / det;
            const double y = (g1.real() * rem.imag() - g1.imag() * rem.real()) / det;
            for (int dx = -2; dx <= 2; ++dx)
                for (int dy = -2; dy <= 2; ++dy) {
                    const int m1 = static_cast<int>(std::clamp(std::lround(x) + dx,
                                                               static_cast<long>(-M), static_cast<long>(M)));
                    const int m2 = static_cast<int>(std::clamp(std::lround(y) + dy,
                                                               static_cast<long>(-M), static_cast<long>(M)));
                    m[idx] = m1;
                    m[idx + 1] = m2;
                    consider(std::abs(rem - static_cast<double>(m1) * g1 - static_cast<double>(m2) * g2));
                }
            m[idx] = m[idx + 1] = 0;
            return;
        }

        const double n2 = std::norm(g[idx]);
        const double ideal = n2 < 1e-300 ? 0.0
                                         : (rem.real() * g[idx].real() + rem.imag() * g[idx].imag()) / n2;
        for (int mm : candidate_order(ideal, M)) {
            m[idx] = mm;
            rec(idx + 1, rem - static_cast<double>(mm) * g[idx]);
        }
        m[idx] = 0;
    };

    rec(0, value);

    out.distance = st.best;
    out.boundary = st.best_boundary || st.capped;
    out.combination.resize(k, 0);
    for (int i = 0; i < k; ++i) out.combination[order[i]] = st.best_m.empty() ? 0 : st.best_m[i];
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

bool NondegReport::pass() const {
    return cond_i.verdict == Verdict::Pass && cond_ii.verdict == Verdict::Pass &&
           cond_iii.verdict == Verdict::Pass && cond_iv.verdict == Verdict::Pass;
}

NondegReport check_nondegeneracy(const RationalField& f, const NondegTolerances& tol) {
    NondegReport rep;
    const double scale = f.scene_scale;
    const double same = 1e-9 * scale;

    // (i) degrees, simplicity, disjointness
    {
        std::ostringstream why;
        bool ok = true;
        if (f.dp != f.d - 2) {
            ok = false;
            why << "degree relation d'=d-2 violated (d=" << f.d << ", d'=" << f.dp << "); ";
        }
        auto dup = [&](const std::vector<cplx>& v) {
            for (size_t i = 0; i < v.size(); ++i)
                for (size_t j = i + 1; j < v.size(); ++j)
                    if (std::abs(v[i] - v[j]) <= same) return true;
            return false;
        };
        if (dup(f.zeros)) { ok = false; why << "multiple zero; "; }
        if (dup(f.poles)) { ok = false; why << "multiple pole; "; }
        rep.cond_i.verdict = ok ? Verdict::Pass : Verdict::Fail;
        rep.cond_i.detail = why.str();
    }

    // (ii) no equilibrium on a full line through any pole pair
    {
        bool ok = true;
        bool skipped = false;
        std::ostringstream why;
        double worst = 1e300;
        for (size_t i = 0; i < f.poles.size(); ++i)
            for (size_t j = i + 1; j < f.poles.size(); ++j) {
                const cplx p = f.poles[i], q = f.poles[j];
                if (std::abs(q - p) <= same) { skipped = true; continue; }
                for (size_t z = 0; z < f.zeros.size(); ++z) {
                    const double h = std::abs(std::imag((f.zeros[z] - p) * std::conj(q - p))) / std::abs(q - p);
                    worst = std::min(worst, h);
                    if (h <= tol.line_clearance * scale) {
                        ok = false;
                        why << "zero " << z << " on line through poles " << i << "," << j
                            << " (offset " << h << "); ";
                    }
                }
            }
        rep.cond_ii.worst = worst == 1e300 ? 0.0 : worst;
        if (!ok) rep.cond_ii.verdict = Verdict::Fail;
        else if (skipped) { rep.cond_ii.verdict = Verdict::Inconclusive; why << "coincident pole pair skipped; "; }
        rep.cond_ii.detail = why.str();
    }

    // (iii) Re sum_J eta != 0 over nontrivial subsets
    {
        if (f.d > 20) {
            rep.cond_iii.verdict = Verdict::Inconclusive;
            rep.cond_iii.detail = "subset enumeration capped at d<=20";
        } else {
            std::vector<cplx> eta;
            bool have = true;
            try {
                eta = residues(f);
            } catch (const std::exception&) {
                have = false;
            }
            if (!have) {
                rep.cond_iii.verdict = Verdict::Inconclusive;
                rep.cond_iii.detail = "residues unavailable (multiple zero)";
            } else {
                const int d = static_cast<int>(eta.size());
                double worst = 1e300;
                for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
                    double re = 0.0;
                    for (int j = 0; j < d; ++j)
                        if (mask & (1u << j)) re += eta[j].real();
                    const double a = std::abs(re);
                    if (a < worst) worst = a;
                    if (a <= tol.res_tol && rep.cond_iii.witness_subsets.size() < 32) {
                        std::vector<int> J;
                        for (int j = 0; j < d; ++j)
                            if (mask & (1u << j)) J.push_back(j);
                        rep.cond_iii.witness_subsets.push_back(J);
                    }
                }
                rep.cond_iii.worst = worst == 1e300 ? 0.0 : worst;
                if (!rep.cond_iii.witness_subsets.empty()) {
                    rep.cond_iii.verdict = Verdict::Fail;
                    std::ostringstream why;
                    why << rep.cond_iii.witness_subsets.size() << " offending subsets, |Re sum| min " << worst;
                    rep.cond_iii.detail = why.str();
                }
            }
        }
    }

    // (iv) pole-pair segment integrals stay off R + P
    {
        bool any_fail = false, any_inc = false;
        std::ostringstream why;
        PeriodModule pm;
        bool have_pm = true;
        try {
            pm = period_module(f);
        } catch (const std::exception&) {
            have_pm = false;
        }
        if (!have_pm) {
            rep.cond_iv.verdict = Verdict::Inconclusive;
            rep.cond_iv.detail = "period module unavailable";
        } else {
            double worst = 1e300;
            for (size_t i = 0; i < f.poles.size(); ++i)
                for (size_t j = i + 1; j < f.poles.size(); ++j) {
                    const cplx p = f.poles[i], q = f.poles[j];
                    if (std::abs(q - p) <= same) { any_inc = true; continue; }
                    cplx I;
                    try {
                        I = integrate_omega(f, {PathSegment::line(p, q)}, 1e-12, 1e-9);
                    } catch (const std::exception&) {
                        any_inc = true;
                        why << "segment " << i << "," << j << " blocked by an equilibrium; ";
                        continue;
                    }
                    const PeriodDistance pd = period_distance(I, pm, true, tol.lattice_bound);
                    worst = std::min(worst, pd.distance);
                    if (pd.distance <= tol.period_tol) {
                        any_fail = true;
                        why << "pole pair " << i << "," << j << " hits R+P (dist " << pd.distance << "); ";
                    } else if (pd.boundary) {
                        any_inc = true;
                        why << "pole pair " << i << "," << j << " minimizer at lattice bound; ";
                    }
                }
            rep.cond_iv.worst = worst == 1e300 ? 0.0 : worst;
            rep.cond_iv.verdict = any_fail ? Verdict::Fail : (any_inc ? Verdict::Inconclusive : Verdict::Pass);
            rep.cond_iv.detail = why.str();
        }
    }
    return rep;
}

}  // namespace sphereflow
