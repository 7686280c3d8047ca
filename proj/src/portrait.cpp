#include "sphereflow/portrait.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sphereflow {

namespace {

double mod2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

// sample position in the chart of the given record
cplx in_chart_of(const EquilibriumRecord& r, const TrajectorySample& s) {
    if (s.chart_z == r.location.chart_z) return s.v;
    if (std::abs(s.v) < 1e-150) return cplx(1e300, 0.0);
    return 1.0 / s.v;
}

// direction of the final approach: angle at the last inward crossing of the
// circle of radius 0.25 * local scale around the terminal
bool approach_angle(const Classification& cls, const Separatrix& sep, double& out) {
    const EquilibriumRecord& r = *cls.at(sep.terminal_equilibrium);
    const double rv = 0.25 * r.local_scale;
    const auto& sm = sep.traj.samples;
    for (size_t i = sm.size(); i-- > 1;) {
        const cplx x0 = in_chart_of(r, sm[i - 1]);
        const cplx x1 = in_chart_of(r, sm[i]);
        const double d0 = std::abs(x0 - r.location.v), d1 = std::abs(x1 - r.location.v);
        if (d0 >= rv && d1 < rv) {
            const double t = (rv - d0) / (d1 - d0);
            const cplx x = x0 + t * (x1 - x0);
            out = std::arg(x - r.location.v);
            return true;
        }
    }
    return false;
}

struct RotEntry {
    double angle;
    int dart;
};

NormalizedPortrait build_normalized(const RationalField& f, const Classification& cls,
                                    const SeparatrixSet& seps) {
    NormalizedPortrait np;
    (void)f;

    for (const auto& r : cls.records)
        if (r.kind == EquilibriumKind::Center || r.kind == EquilibriumKind::DegenerateZero ||
            r.kind == EquilibriumKind::DegeneratePole) {
            np.reason = "center or degenerate equilibrium";
            return np;
        }
    for (const auto& s : seps.seps) {
        if (s.pole_id < 0) {
            np.reason = "unexpected boundary separatrix";
            return np;
        }
        if (s.terminal_equilibrium < 0) {
            np.reason = "separatrix did not converge";
            return np;
        }
        if (cls.at(s.terminal_equilibrium)->kind == EquilibriumKind::PoleSaddle) {
            np.reason = "saddle connection";
            return np;
        }
    }

    bool colors_ok = true;
    for (const auto& s : seps.seps) {
        const auto kind = cls.at(s.terminal_equilibrium)->kind;
        if (s.color == SepColor::Blue && kind != EquilibriumKind::Sink) colors_ok = false;
        if (s.color == SepColor::Red && kind != EquilibriumKind::Source) colors_ok = false;
    }

    // skeleton darts: 2*sid at the pole end, 2*sid+1 at the terminal end
    const int nrec = static_cast<int>(cls.records.size());
    std::vector<std::vector<RotEntry>> rot(nrec);
    std::vector<SaddleFrame> frames(nrec);
    for (const auto& r : cls.records)
        if (r.kind == EquilibriumKind::PoleSaddle) frames[r.id] = saddle_frame(f, cls, r.id);

    for (const auto& s : seps.seps) {
        const cplx dir = (s.color == SepColor::Blue ? frames[s.pole_id].unstable
                                                    : frames[s.pole_id].stable) *
                         (s.branch == 0 ? 1.0 : -1.0);
        rot[s.pole_id].push_back({mod2pi(std::arg(dir)), 2 * s.id});
        double ang;
        if (!approach_angle(cls, s, ang)) {
            np.reason = "approach angle not measurable";
            return np;
        }
        rot[s.terminal_equilibrium].push_back({mod2pi(ang), 2 * s.id + 1});
    }

    const int ndart = 2 * static_cast<int>(seps.seps.size());
    std::vector<std::vector<int>> rot_darts(nrec);
    for (int v = 0; v < nrec; ++v) {
        std::sort(rot[v].begin(), rot[v].end(),
                  [](const RotEntry& a, const RotEntry& b) { return a.angle < b.angle; });
        for (const auto& e : rot[v]) rot_darts[v].push_back(e.dart);
    }
    std::vector<int> twin(ndart);
    for (const auto& s : seps.seps) {
        twin[2 * s.id] = 2 * s.id + 1;
        twin[2 * s.id + 1] = 2 * s.id;
    }
    std::vector<int> colors(nrec, 0);
    for (const auto& r : cls.records)
        colors[r.id] = r.kind == EquilibriumKind::Sink ? 1
                     : r.kind == EquilibriumKind::PoleSaddle ? 2 : 0;

    np.skeleton.map = PlaneMultigraph::build(rot_darts, twin, colors);
    np.skeleton.vertex_record.resize(nrec);
    std::iota(np.skeleton.vertex_record.begin(), np.skeleton.vertex_record.end(), 0);
    np.skeleton.dart_separatrix.assign(ndart, -1);
    for (const auto& s : seps.seps) {
        np.skeleton.dart_separatrix[2 * s.id] = s.id;
        np.skeleton.dart_separatrix[2 * s.id + 1] = s.id;
    }

    // checks
    PortraitChecks& ck = np.checks;
    ck.colors_ok = colors_ok;

    ck.euler_ok = true;
    for (int chi : np.skeleton.map.component_euler())
        if (chi != 2) ck.euler_ok = false;

    const auto faces = np.skeleton.map.faces();
    ck.quads_ok = true;
    for (const auto& face : faces) {
        if (face.size() != 4) { ck.quads_ok = false; continue; }
        int pole_mask = 0, src = 0, snk = 0;
        for (int i = 0; i < 4; ++i) {
            const int c = colors[np.skeleton.map.vertex_of[face[i]]];
            if (c == 2) pole_mask |= 1 << i;
            else if (c == 1) ++snk;
            else ++src;
        }
        if (!(src == 1 && snk == 1 && (pole_mask == 0b0101 || pole_mask == 0b1010)))
            ck.quads_ok = false;
    }

    // connection graphs: induced blue map on sinks, red on sources
    auto build_side = [&](SepColor color, EquilibriumKind vkind, PlaneMultigraph& g,
                          std::vector<int>& vrec, std::vector<int>& epole) {
        std::vector<int> vid(nrec, -1);
        for (const auto& r : cls.records)
            if (r.kind == vkind) {
                vid[r.id] = static_cast<int>(vrec.size());
                vrec.push_back(r.id);
            }
        // darts: per separatrix of this color, its terminal-end skeleton dart
        std::vector<int> dart_id(ndart, -1);
        std::vector<int> side_twin;
        std::vector<std::vector<int>> side_rot(vrec.size());
        int nd = 0;
        for (const auto& s : seps.seps)
            if (s.color == color) dart_id[2 * s.id + 1] = nd++;
        side_twin.assign(nd, -1);
        for (int v = 0; v < nrec; ++v) {
            if (vid[v] < 0) continue;
            for (int d : rot_darts[v])
                if (dart_id[d] >= 0) side_rot[vid[v]].push_back(dart_id[d]);
        }
        // twin: the two same-colored separatrices of one pole form an edge
        std::vector<std::vector<int>> by_pole(nrec);
        for (const auto& s : seps.seps)
            if (s.color == color) by_pole[s.pole_id].push_back(s.id);
        for (int p = 0; p < nrec; ++p) {
            if (by_pole[p].empty()) continue;
            if (by_pole[p].size() != 2) return false;
            const int a = dart_id[2 * by_pole[p][0] + 1], b = dart_id[2 * by_pole[p][1] + 1];
            side_twin[a] = b;
            side_twin[b] = a;
            epole.push_back(p);
        }
        std::vector<int> vcolors(vrec.size(), vkind == EquilibriumKind::Sink ? 1 : 0);
        g = PlaneMultigraph::build(side_rot, side_twin, vcolors);
        return true;
    };
    bool sides_ok = build_side(SepColor::Blue, EquilibriumKind::Sink, np.graphs.blue,
                               np.graphs.blue_vertex_record, np.graphs.blue_edge_pole);
    sides_ok = sides_ok && build_side(SepColor::Red, EquilibriumKind::Source, np.graphs.red,
                                      np.graphs.red_vertex_record, np.graphs.red_edge_pole);
    if (!sides_ok) {
        np.reason = "pole without a full separatrix pair";
        return np;
    }

    // duality: glue skeleton faces across one color, count against the other graph
    auto glue_check = [&](SepColor cut, EquilibriumKind kept, const PlaneMultigraph& other) {
        const int nf = static_cast<int>(faces.size());
        std::vector<int> face_of(ndart, -1);
        for (int i = 0; i < nf; ++i)
            for (int d : faces[i]) face_of[d] = i;
        std::vector<int> parent(nf);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& s : seps.seps)
            if (s.color == cut) {
                const int a = find(face_of[2 * s.id]), b = find(face_of[2 * s.id + 1]);
                if (a != b) parent[a] = b;
            }
        std::map<int, std::set<int>> kept_by_group;
        for (int i = 0; i < nf; ++i) {
            kept_by_group[find(i)];
            for (int d : faces[i]) {
                const int rec = np.skeleton.map.vertex_of[d];
                if (cls.at(rec)->kind == kept) kept_by_group[find(i)].insert(rec);
            }
        }
        for (const auto& [g, s] : kept_by_group)
            if (s.size() != 1) return false;
        size_t other_faces = 0;
        if (other.darts() > 0) other_faces = other.faces().size();
        return kept_by_group.size() == other_faces;
    };
    if (np.skeleton.map.darts() == 0) {
        ck.duality_ok = true;   // no poles, nothing to pair
    } else {
        ck.duality_ok = glue_check(SepColor::Red, EquilibriumKind::Source, np.graphs.blue) &&
                        glue_check(SepColor::Blue, EquilibriumKind::Sink, np.graphs.red);
    }

    np.ok = true;
    return np;
}

PolynomialPortrait build_polynomial(const RationalField& f, const Classification& cls,
                                    const SeparatrixSet& seps) {
    PolynomialPortrait pp;
    if (f.d < 3) {
        pp.reason = "degree too small for a boundary structure";
        return pp;
    }

    struct Entry {
        double angle;
        int sep_id;
    };
    std::vector<Entry> entries;

    if (f.inf_mult <= -2) {
        for (const auto& s : seps.seps)
            if (s.boundary_label >= 0)
                entries.push_back({seps.boundary.saddles[s.boundary_label].angle, s.id});
    } else {
        // simple pole at infinity: its four branches play the boundary roles
        int inf_id = -1;
        for (const auto& r : cls.records)
            if (r.location.is_infinity() && r.kind == EquilibriumKind::PoleSaddle) inf_id = r.id;
        if (inf_id < 0) {
            pp.reason = "no saddle at infinity";
            return pp;
        }
        const SaddleFrame fr = saddle_frame(f, cls, inf_id);
        for (const auto& s : seps.seps) {
            if (s.pole_id != inf_id) continue;
            const cplx dir = (s.color == SepColor::Blue ? fr.unstable : fr.stable) *
                             (s.branch == 0 ? 1.0 : -1.0);
            entries.push_back({mod2pi(-std::arg(dir)), s.id});
        }
    }
    if (static_cast<int>(entries.size()) != 2 * (f.d - 1)) {
        pp.reason = "boundary separatrix count off";
        return pp;
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.angle < b.angle; });

    for (const auto& e : entries) {
        const auto& s = seps.seps[e.sep_id];
        if (s.terminal_equilibrium < 0) {
            pp.reason = "boundary separatrix did not converge";
            return pp;
        }
        const auto kind = cls.at(s.terminal_equilibrium)->kind;
        if (kind != EquilibriumKind::Source && kind != EquilibriumKind::Sink) {
            pp.reason = "boundary separatrix ended at a non-hyperbolic equilibrium";
            return pp;
        }
        if ((s.color == SepColor::Blue) != (kind == EquilibriumKind::Sink)) {
            pp.reason = "separatrix color does not match its terminal";
            return pp;
        }
        pp.sector_terminals.push_back(s.terminal_equilibrium);
        pp.sector_angles.push_back(e.angle);
        pp.sector_separatrix.push_back(e.sep_id);
    }

    pp.parse = parse_contour_walk(pp.sector_terminals);
    if (!pp.parse.ok) {
        pp.reason = "sector sequence is not a tree contour: " + pp.parse.reason;
        return pp;
    }
    pp.vertex_kind.resize(pp.parse.tree.size());
    for (int v = 0; v < pp.parse.tree.size(); ++v)
        pp.vertex_kind[v] =
            cls.at(pp.parse.label_of_vertex[v])->kind == EquilibriumKind::Sink ? 1 : 0;
    pp.ok = true;
    return pp;
}

AntiPolynomialPortrait build_antipoly(const RationalField& f, const Classification& cls,
                                      const SeparatrixSet& seps) {
    AntiPolynomialPortrait ap;
    if (!seps.boundary.node_like) {
        ap.reason = "no node circle at infinity";
        return ap;
    }
    const int nnode = seps.boundary.count();
    std::vector<int> ordinal(nnode, -1);   // node label -> sink or source ordinal
    int nsink = 0, nsrc = 0;
    for (const auto& node : seps.boundary.saddles)
        ordinal[node.label] = node.color == SepColor::Blue ? nsink++ : nsrc++;
    ap.blue.n = nsink;
    ap.red.n = nsrc;

    std::map<int, std::array<std::vector<int>, 2>> pole_nodes;   // pole -> [blue labels, red labels]
    for (const auto& s : seps.seps) {
        if (s.pole_id < 0) {
            ap.reason = "unexpected boundary-seeded separatrix";
            return ap;
        }
        if (!s.terminal_at_infinity) {
            ap.reason = "separatrix did not reach the circle";
            return ap;
        }
        const auto& node = seps.boundary.saddles[s.terminal_boundary_label];
        if ((s.color == SepColor::Blue) != (node.color == SepColor::Blue)) {
            ap.reason = "separatrix landed on a node of the wrong stability";
            return ap;
        }
        pole_nodes[s.pole_id][s.color == SepColor::Blue ? 0 : 1].push_back(node.label);
    }

    for (auto& [pole, labels] : pole_nodes) {
        for (int side = 0; side < 2; ++side) {
            auto& ls = labels[side];
            if (ls.size() != 2 || ls[0] == ls[1]) {
                ap.reason = "pole separatrix pair does not span two nodes";
                return ap;
            }
            const int a = ordinal[ls[0]], b = ordinal[ls[1]];
            NcTree& t = side == 0 ? ap.blue : ap.red;
            t.chords.emplace_back(std::min(a, b), std::max(a, b));
            (side == 0 ? ap.blue_chord_pole : ap.red_chord_pole).push_back(pole);
        }
    }
    if (!nc_is_valid(ap.blue) || !nc_is_valid(ap.red)) {
        ap.reason = "chords do not form a non-crossing spanning tree";
        return ap;
    }

    // duality: codes agree and each pole's chords interleave on the node circle
    ap.dual_ok = nc_code(ap.red) == nc_code(nc_dual(ap.blue));
    for (const auto& [pole, labels] : pole_nodes) {
        const int b1 = labels[0][0], b2 = labels[0][1];
        const int r1 = labels[1][0], r2 = labels[1][1];
        auto inside = [&](int x) {
            const int lo = std::min(b1, b2), hi = std::max(b1, b2);
            return lo < x && x < hi;
        };
        if (inside(r1) == inside(r2)) ap.dual_ok = false;
    }
    ap.ok = true;
    return ap;
}

}  // namespace

Portrait build_portrait(const RationalField& f, const Classification& cls,
                        const SeparatrixSet& seps) {
    Portrait p;
    p.mode = f.mode;
    switch (f.mode) {
        case FieldMode::Normalized:
            p.normalized = build_normalized(f, cls, seps);
            break;
        case FieldMode::Polynomial:
            p.polynomial = build_polynomial(f, cls, seps);
            break;
        case FieldMode::AntiPolynomial:
            p.antipolynomial = build_antipoly(f, cls, seps);
            break;
        default:
            break;
    }
    return p;
}

Analysis analyze(const RationalField& f, const SeparatrixOptions& opt) {
    Analysis an;
    an.cls = classify(f);
    an.seps = trace_separatrices(f, an.cls, opt);
    an.portrait = build_portrait(f, an.cls, an.seps);
    return an;
}

}  // namespace sphereflow
