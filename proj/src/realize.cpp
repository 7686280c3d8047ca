#include "sphereflow/realize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace sphereflow {

namespace {

double mod2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

// ccw midpoint of the arc from x to y
double arc_mid(double x, double y) { return x + 0.5 * mod2pi(y - x); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- polynomial

bool verify_polynomial(const RationalField& f, const PlaneTree& target) {
    try {
        if (target.size() == 2) {
            if (f.d != 2 || f.dp != 0) return false;
            const Classification cls = classify(f);
            int src = 0, snk = 0;
            for (const auto& r : cls.records) {
                if (r.kind == EquilibriumKind::Source) ++src;
                else if (r.kind == EquilibriumKind::Sink) ++snk;
                else return false;
            }
            return src == 1 && snk == 1;
        }
        const Analysis an = analyze(f);
        if (!an.portrait.polynomial || !an.portrait.polynomial->ok) return false;
        return tree_code(an.portrait.polynomial->parse.tree) == tree_code(target);
    } catch (...) {
        return false;
    }
}

namespace {

struct TreePeel {
    PlaneTree smaller;
    int attach_dart = -1;   // dart (v -> b) in `smaller`: reinsert the leaf before b
    PlaneTree larger;
};

PlaneTree drop_leaf(const PlaneTree& t, int u, int& attach_dart) {
    const int v = t.nbr[u][0];
    const int deg = static_cast<int>(t.nbr[v].size());
    int j = -1;
    for (int i = 0; i < deg; ++i)
        if (t.nbr[v][i] == u) j = i;
    const int jb = (j + 1) % deg;

    PlaneTree s;
    s.nbr.resize(t.size() - 1);
    auto nid = [u](int x) { return x - (x > u ? 1 : 0); };
    for (int x = 0; x < t.size(); ++x) {
        if (x == u) continue;
        for (int w : t.nbr[x])
            if (w != u) s.nbr[nid(x)].push_back(nid(w));
    }
    const int jb_new = jb - (jb > j ? 1 : 0);
    attach_dart = tree_dart(s, nid(v), jb_new);
    return s;
}

}  // namespace

RealizationResult realize_polynomial(const PlaneTree& target) {
    RealizationResult rr;
    const int n = target.size();
    if (n < 2) {
        rr.reason = "need at least two vertices";
        return rr;
    }
    try {
        const auto m = tree_map(target);
        const auto comp = m.component_of_vertex();
        for (int c : comp)
            if (c != 0) throw std::invalid_argument("disconnected");
        if (m.edges() != n - 1) throw std::invalid_argument("not a tree");
    } catch (const std::exception& e) {
        rr.reason = std::string("invalid target: ") + e.what();
        return rr;
    }

    // peel the canonically least leaf until three vertices remain
    std::vector<TreePeel> peels;
    PlaneTree cur = target;
    while (cur.size() > 3) {
        const TreeCanonical tc = tree_canonical(cur);
        int best_u = -1, best_label = -1;
        for (int u = 0; u < cur.size(); ++u) {
            if (cur.nbr[u].size() != 1) continue;
            const int lab = tc.dart_label[tree_dart(cur, u, 0)];
            if (best_u < 0 || lab < best_label) {
                best_u = u;
                best_label = lab;
            }
        }
        TreePeel peel;
        peel.larger = cur;
        peel.smaller = drop_leaf(cur, best_u, peel.attach_dart);
        cur = peel.smaller;
        peels.push_back(std::move(peel));
    }

    // base field
    RationalField f;
    if (n == 2) {
        f = build_field({1.0, -1.0}, {}, 1.0);
        rr.plan.push_back("base: two zeros, straight flow between them");
    } else {
        const cplx w3 = std::exp(cplx(0.0, 2.0 * M_PI / 3.0));
        f = build_field({1.0, w3, w3 * w3}, {}, 1.0);
        rr.plan.push_back("base: cube roots of unity");
    }
    if (!verify_polynomial(f, cur)) {
        rr.reason = "base field does not match the peeled core";
        return rr;
    }

    // reattach leaves
    for (auto it = peels.rbegin(); it != peels.rend(); ++it) {
        const TreePeel& peel = *it;
        const Analysis an = analyze(f);
        if (!an.portrait.polynomial || !an.portrait.polynomial->ok) {
            rr.reason = "intermediate field lost its sector structure";
            return rr;
        }
        const auto& pp = *an.portrait.polynomial;
        const TreeCanonical tc_s = tree_canonical(peel.smaller);
        const TreeCanonical tc_a = tree_canonical(pp.parse.tree);
        if (tc_s.code != tc_a.code) {
            rr.reason = "intermediate field realizes the wrong tree";
            return rr;
        }
        const int want = tc_s.dart_label[peel.attach_dart];
        int da = -1;
        for (size_t d = 0; d < tc_a.dart_label.size(); ++d)
            if (tc_a.dart_label[d] == want) da = static_cast<int>(d);
        int sector = -1;
        for (size_t k = 0; k < pp.parse.corner_dart.size(); ++k)
            if (pp.parse.corner_dart[k] == da) sector = static_cast<int>(k);
        if (sector < 0) {
            rr.reason = "attachment corner not found";
            return rr;
        }
        const double alpha = pp.sector_angles[sector];

        bool attached = false;
        for (double delta = 0.01; delta >= 1e-5; delta *= 0.5) {
            std::vector<cplx> zs;
            for (const cplx& z : f.zeros) zs.push_back(delta * z);
            zs.push_back(std::exp(cplx(0.0, alpha)));
            const RationalField cand =
                build_field(zs, {}, f.a * (-std::exp(cplx(0.0, -alpha))));
            if (verify_polynomial(cand, peel.larger)) {
                f = cand;
                rr.plan.push_back("attach zero toward angle " + fmt(alpha) + " at shrink " +
                                  fmt(delta));
                attached = true;
                break;
            }
        }
        if (!attached) {
            rr.reason = "no shrink factor verified at degree " +
                        std::to_string(peel.larger.size());
            return rr;
        }
    }

    rr.ok = true;
    rr.field = f;
    return rr;
}

// ------------------------------------------------------------------ rational

bool verify_rational(const RationalField& f, const RationalTarget& target) {
    try {
        const Analysis an = analyze(f);
        if (!an.portrait.normalized || !an.portrait.normalized->ok) return false;
        if (!an.portrait.normalized->checks.pass()) return false;
        PlaneMultigraph tb = target.blue, tr = target.red;
        tb.vertex_color.assign(tb.n_vertices, 1);
        tr.vertex_color.assign(tr.n_vertices, 0);
        const CodePolicy exact;
        return canonical_code(an.portrait.normalized->graphs.blue, exact) ==
                   canonical_code(tb, exact) &&
               canonical_code(an.portrait.normalized->graphs.red, exact) ==
                   canonical_code(tr, exact);
    } catch (...) {
        return false;
    }
}

namespace {

std::vector<std::vector<int>> rotations(const PlaneMultigraph& g) {
    std::vector<std::vector<int>> rot(g.n_vertices);
    std::vector<char> seen(g.darts(), 0);
    for (int d0 = 0; d0 < g.darts(); ++d0) {
        if (seen[d0]) continue;
        int e = d0;
        do {
            seen[e] = 1;
            rot[g.vertex_of[e]].push_back(e);
            e = g.sigma[e];
        } while (e != d0);
    }
    return rot;
}

// drop edge p (darts 2p, 2p+1), shifting the ids of later edges down
PlaneMultigraph delete_edge(const PlaneMultigraph& g, int p) {
    auto rot = rotations(g);
    auto keep = [p](int d) { return d != 2 * p && d != 2 * p + 1; };
    auto remap = [p](int d) { return d - (d > 2 * p + 1 ? 2 : 0); };
    std::vector<std::vector<int>> nrot(g.n_vertices);
    for (int v = 0; v < g.n_vertices; ++v)
        for (int d : rot[v])
            if (keep(d)) nrot[v].push_back(remap(d));
    std::vector<int> ntwin(g.darts() - 2, -1);
    for (int d = 0; d < g.darts(); ++d)
        if (keep(d)) ntwin[remap(d)] = remap(g.twin[d]);
    return PlaneMultigraph::build(nrot, ntwin, g.vertex_color);
}

// contract non-loop edge p; the merged vertex keeps the rotation of end 2p
// spliced with the rotation of end 2p+1; k1/k2 count the surviving darts of
// each end
PlaneMultigraph contract_edge(const PlaneMultigraph& g, int p, int* k1, int* k2) {
    const int s1 = g.vertex_of[2 * p], s2 = g.vertex_of[2 * p + 1];
    if (s1 == s2) throw std::invalid_argument("contract_edge: loop");
    std::vector<int> merged;
    for (int e = g.sigma[2 * p]; e != 2 * p; e = g.sigma[e]) merged.push_back(e);
    *k1 = static_cast<int>(merged.size());
    for (int e = g.sigma[2 * p + 1]; e != 2 * p + 1; e = g.sigma[e]) merged.push_back(e);
    *k2 = static_cast<int>(merged.size()) - *k1;

    auto rot = rotations(g);
    auto remap = [p](int d) { return d - (d > 2 * p + 1 ? 2 : 0); };
    auto nid = [s2](int v) { return v - (v > s2 ? 1 : 0); };
    std::vector<std::vector<int>> nrot(g.n_vertices - 1);
    std::vector<int> ncol(g.n_vertices - 1, 0);
    for (int v = 0; v < g.n_vertices; ++v) {
        if (v == s2) continue;
        ncol[nid(v)] = g.vertex_color.empty() ? 0 : g.vertex_color[v];
        if (v == s1) {
            for (int d : merged) nrot[nid(v)].push_back(remap(d));
        } else {
            for (int d : rot[v]) nrot[nid(v)].push_back(remap(d));
        }
    }
    std::vector<int> ntwin(g.darts() - 2, -1);
    for (int d = 0; d < g.darts(); ++d)
        if (d != 2 * p && d != 2 * p + 1) ntwin[remap(d)] = remap(g.twin[d]);
    return PlaneMultigraph::build(nrot, ntwin, ncol);
}

}  // namespace

RealizationResult realize_rational(const RationalTarget& target) {
    RealizationResult rr;
    RationalTarget t = target;
    t.blue.vertex_color.assign(t.blue.n_vertices, 1);
    t.red.vertex_color.assign(t.red.n_vertices, 0);
    const int np = t.blue.edges();
    if (t.red.edges() != np) {
        rr.reason = "blue and red must carry one edge per pole";
        return rr;
    }

    if (np == 0) {
        if (t.blue.n_vertices != 1 || t.red.n_vertices != 1) {
            rr.reason = "a pole-free field has exactly one source and one sink";
            return rr;
        }
        rr.field = build_field({1.0, -1.0}, {}, 1.0);
        rr.plan.push_back("base: plain source to sink flow");
        rr.ok = true;
        return rr;
    }

    int p = -1;
    for (int e = 0; e < np && p < 0; ++e)
        if (t.blue.vertex_of[2 * e] != t.blue.vertex_of[2 * e + 1]) p = e;

    if (p < 0) {
        // every blue edge is a loop; work on the time reversed target instead.
        // If the red side is also all loops the reversal would bounce forever,
        // and no field exists anyway: loops on both sides leave the sink-source
        // incidence too sparse to connect a component of Euler characteristic 2.
        bool red_has_nonloop = false;
        for (int e = 0; e < np && !red_has_nonloop; ++e)
            if (t.red.vertex_of[2 * e] != t.red.vertex_of[2 * e + 1]) red_has_nonloop = true;
        if (!red_has_nonloop) {
            rr.reason = "blue and red edges are all loops; no spherical flow carries this";
            return rr;
        }
        RationalTarget rev;
        rev.blue = t.red;
        rev.red = t.blue;
        auto sub = realize_rational(rev);
        if (!sub.ok) {
            rr.reason = "reversed target: " + sub.reason;
            return rr;
        }
        const RationalField f =
            build_field(sub.field->zeros, sub.field->poles, -sub.field->a);
        if (!verify_rational(f, t)) {
            rr.reason = "time reversal did not verify";
            return rr;
        }
        rr.plan = sub.plan;
        rr.plan.push_back("reverse time");
        rr.ok = true;
        rr.field = f;
        return rr;
    }

    int k1 = 0, k2 = 0;
    RationalTarget sub;
    sub.blue = contract_edge(t.blue, p, &k1, &k2);
    sub.red = delete_edge(t.red, p);
    auto sr = realize_rational(sub);
    if (!sr.ok) {
        rr.reason = sr.reason;
        return rr;
    }
    rr.plan = sr.plan;

    const int K = k1 + k2;
    const Analysis an_sub = analyze(*sr.field);

    for (const auto& rec : an_sub.cls.records) {
        if (rec.kind != EquilibriumKind::Sink) continue;
        int deg = 0;
        for (const auto& s : an_sub.seps.seps)
            if (s.color == SepColor::Blue && s.terminal_equilibrium == rec.id) ++deg;
        if (deg != K) continue;

        const RationalField f0 =
            apply_mobius(*sr.field, Mobius::translation(-rec.location.w()));
        const Analysis an0 = analyze(f0);
        int sink0 = -1;
        double ls = 0.0;
        for (const auto& r0 : an0.cls.records)
            if (r0.kind == EquilibriumKind::Sink && !r0.location.chart_z &&
                std::abs(r0.location.v) < 1e-9 * f0.scene_scale) {
                sink0 = r0.id;
                ls = r0.local_scale;
            }
        if (sink0 < 0) continue;

        // final approach angles of the incoming blue separatrices
        std::vector<double> A;
        if (K > 0) {
            double rho = 0.25 * ls;
            for (int attempt = 0; attempt < 6 && A.empty(); ++attempt, rho *= 0.5) {
                const CrossingReport rep = crossing_angles(f0, an0.cls, an0.seps, rho);
                if (!rep.transversal) continue;
                std::map<int, double> last;
                for (const auto& c : rep.crossings) {
                    const auto& s = an0.seps.seps[c.separatrix_id];
                    if (s.color == SepColor::Blue && s.terminal_equilibrium == sink0)
                        last[c.separatrix_id] = c.angle;
                }
                if (static_cast<int>(last.size()) == K)
                    for (const auto& kv : last) A.push_back(kv.second);
            }
            if (A.empty()) continue;
            std::sort(A.begin(), A.end());
        }

        // candidate stable wedges (m_minus ccw to m_plus receives the first block)
        struct Cand {
            double mminus, mplus;
        };
        std::vector<Cand> cands;
        if (K == 0) {
            cands.push_back({-0.5 * M_PI, 0.5 * M_PI});   // q = 1, theta = 0
        } else if (k1 == 0 || k2 == 0) {
            std::vector<std::pair<double, int>> gaps;
            for (int i = 0; i < K; ++i)
                gaps.emplace_back(K == 1 ? 2.0 * M_PI : mod2pi(A[(i + 1) % K] - A[i]), i);
            std::sort(gaps.rbegin(), gaps.rend());
            for (const auto& [len, i] : gaps) {
                if (k2 == 0)   // wedge holds every measured angle
                    cands.push_back({A[i] + 0.75 * len, A[i] + 0.25 * len});
                else           // wedge sits empty inside the gap
                    cands.push_back({A[i] + 0.25 * len, A[i] + 0.75 * len});
            }
        } else {
            for (int r = 0; r < K; ++r) {
                const double last1 = A[(r + k1 - 1) % K], first2 = A[(r + k1) % K];
                const double last2 = A[(r + K - 1) % K], first1 = A[r];
                cands.push_back({arc_mid(last2, first1), arc_mid(last1, first2)});
            }
        }

        for (const auto& c : cands) {
            const double h = 0.5 * mod2pi(c.mplus - c.mminus);
            if (h < 1e-6 || h > M_PI - 1e-6) continue;
            const double q = M_PI / h - 1.0;
            const double theta = c.mplus - h;
            for (double delta = 0.05 * ls; delta >= 1e-4 * ls; delta *= 0.5) {
                std::vector<cplx> zs;
                size_t at0 = 0;
                for (size_t i = 1; i < f0.zeros.size(); ++i)
                    if (std::abs(f0.zeros[i]) < std::abs(f0.zeros[at0])) at0 = i;
                for (size_t i = 0; i < f0.zeros.size(); ++i)
                    if (i != at0) zs.push_back(f0.zeros[i]);
                const cplx z1 = std::polar(delta, theta);
                zs.push_back(z1);
                zs.push_back(-q * z1);
                std::vector<cplx> ps = f0.poles;
                ps.push_back(0.0);
                RationalField cand;
                try {
                    cand = build_field(zs, ps, f0.a);
                } catch (...) {
                    continue;
                }
                if (verify_rational(cand, t)) {
                    rr.plan.push_back("split a sink across a new pole, q " + fmt(q) +
                                      ", heading " + fmt(theta));
                    rr.ok = true;
                    rr.field = cand;
                    return rr;
                }
            }
        }
    }

    rr.reason = "no expansion of the contracted field verified";
    return rr;
}

// ------------------------------------------------------------ anti-polynomial

bool verify_antipolynomial(const RationalField& f, const NcTree& target) {
    try {
        const Analysis an = analyze(f);
        if (!an.portrait.antipolynomial || !an.portrait.antipolynomial->ok) return false;
        if (!an.portrait.antipolynomial->dual_ok) return false;
        return nc_code(an.portrait.antipolynomial->blue) == nc_code(target);
    } catch (...) {
        return false;
    }
}

namespace {

struct NcPeel {
    NcTree larger;
    NcTree smaller;
    int v = -1;      // attach the new node next to this one
    int side = +1;   // +1 ccw of v, -1 cw of v
};

// a leaf whose chord spans one circle step always exists in a non-crossing tree
bool find_short_leaf(const NcTree& t, int& u, int& v) {
    std::vector<int> deg(t.n, 0);
    for (const auto& [a, b] : t.chords) {
        ++deg[a];
        ++deg[b];
    }
    for (const auto& [a, b] : t.chords) {
        const bool adjacent = (a + 1) % t.n == b || (b + 1) % t.n == a;
        if (!adjacent) continue;
        if (deg[a] == 1) {
            u = a;
            v = b;
            return true;
        }
        if (deg[b] == 1) {
            u = b;
            v = a;
            return true;
        }
    }
    return false;
}

NcTree drop_node(const NcTree& t, int u) {
    NcTree s;
    s.n = t.n - 1;
    auto nid = [u](int x) { return x - (x > u ? 1 : 0); };
    for (const auto& [a, b] : t.chords) {
        if (a == u || b == u) continue;
        const int x = nid(a), y = nid(b);
        s.chords.emplace_back(std::min(x, y), std::max(x, y));
    }
    return s;
}

std::set<std::pair<int, int>> chord_set(const NcTree& t) {
    return {t.chords.begin(), t.chords.end()};
}

}  // namespace

RealizationResult realize_antipolynomial(const NcTree& target) {
    RealizationResult rr;
    if (target.n < 1 || !nc_is_valid(target)) {
        rr.reason = "target is not a non-crossing spanning tree";
        return rr;
    }
    if (target.n == 1) {
        rr.field = build_field({}, {}, 1.0);
        rr.plan.push_back("base: constant flow, no poles");
        rr.ok = true;
        return rr;
    }

    std::vector<NcPeel> peels;
    NcTree cur = target;
    while (cur.n > 2) {
        int u = -1, v = -1;
        if (!find_short_leaf(cur, u, v)) {
            rr.reason = "no short leaf found";   // cannot happen for a valid tree
            return rr;
        }
        NcPeel peel;
        peel.larger = cur;
        peel.side = (v + 1) % cur.n == u ? +1 : -1;
        peel.smaller = drop_node(cur, u);
        peel.v = v - (v > u ? 1 : 0);
        cur = peel.smaller;
        peels.push_back(std::move(peel));
    }

    // base: one pole, flow i/w
    RationalField f = build_field({}, {0.0}, cplx(0.0, 1.0));
    if (!verify_antipolynomial(f, cur)) {
        rr.reason = "base field does not match the peeled core";
        return rr;
    }
    rr.plan.push_back("base: single pole");

    for (auto it = peels.rbegin(); it != peels.rend(); ++it) {
        const NcPeel& peel = *it;
        const NcTree& step_target = peel.larger;

        const Analysis an = analyze(f);
        if (!an.portrait.antipolynomial || !an.portrait.antipolynomial->ok) {
            rr.reason = "intermediate field lost its node structure";
            return rr;
        }
        const auto& ap = *an.portrait.antipolynomial;
        if (nc_code(ap.blue) != nc_code(peel.smaller)) {
            rr.reason = "intermediate field realizes the wrong tree";
            return rr;
        }
        const int n1 = peel.smaller.n;
        const auto realized = chord_set(ap.blue);

        // angles of the boundary nodes by color ordinal
        std::vector<double> sink_angle, source_angle;
        for (const auto& node : an.seps.boundary.saddles)
            (node.color == SepColor::Blue ? sink_angle : source_angle).push_back(node.angle);

        bool attached = false;
        for (int refl = 0; refl < 2 && !attached; ++refl) {
            for (int rot = 0; rot < n1 && !attached; ++rot) {
                auto phi = [&](int x) { return refl ? (rot + n1 - x) % n1 : (rot + x) % n1; };
                std::set<std::pair<int, int>> image;
                for (const auto& [a, b] : peel.smaller.chords) {
                    const int x = phi(a), y = phi(b);
                    image.emplace(std::min(x, y), std::max(x, y));
                }
                if (image != realized) continue;
                const int v_r = phi(peel.v);
                const int side_r = refl ? -peel.side : peel.side;
                const int w_r = (v_r + side_r + n1) % n1;

                const double bv = sink_angle[v_r], bw = sink_angle[w_r];
                const double gap = side_r > 0 ? mod2pi(bw - bv) : mod2pi(bv - bw);
                for (double frac : {0.5, 0.25, 0.75}) {
                    const double c = bv + side_r * frac * gap;
                    // rotate the picture so the attachment arc faces angle 0
                    std::vector<cplx> prot;
                    for (const cplx& q : f.poles) prot.push_back(q * std::exp(cplx(0.0, -c)));
                    const cplx arot =
                        f.a * std::exp(cplx(0.0, -c * (1.0 + static_cast<double>(f.dp))));
                    for (double delta = 0.1; delta >= 1e-4; delta *= 0.5) {
                        std::vector<cplx> ps;
                        for (const cplx& q : prot) ps.push_back(delta * q);
                        ps.push_back(1.0);
                        RationalField cand;
                        try {
                            cand = build_field({}, ps, -arot);
                        } catch (...) {
                            continue;
                        }
                        if (!hamiltonian_data(cand).distinct) continue;
                        if (verify_antipolynomial(cand, step_target)) {
                            f = cand;
                            rr.plan.push_back("add pole facing angle " + fmt(c) +
                                              " at shrink " + fmt(delta));
                            attached = true;
                            break;
                        }
                    }
                    if (attached) break;
                }
            }
        }
        if (!attached) {
            rr.reason = "no attachment verified at " + std::to_string(peel.smaller.n + 1) +
                        " nodes";
            return rr;
        }
    }

    rr.ok = true;
    rr.field = f;
    return rr;
}

}  // namespace sphereflow
