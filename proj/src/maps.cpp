#include "sphereflow/maps.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sphereflow {

PlaneMultigraph PlaneMultigraph::build(const std::vector<std::vector<int>>& rot,
                                       const std::vector<int>& twin_in,
                                       std::vector<int> colors) {
    PlaneMultigraph g;
    g.n_vertices = static_cast<int>(rot.size());
    g.twin = twin_in;
    const int nd = static_cast<int>(twin_in.size());
    g.sigma.assign(nd, -1);
    g.vertex_of.assign(nd, -1);
    for (int v = 0; v < g.n_vertices; ++v) {
        const auto& cyc = rot[v];
        for (size_t i = 0; i < cyc.size(); ++i) {
            const int d = cyc[i];
            if (d < 0 || d >= nd || g.vertex_of[d] != -1)
                throw std::invalid_argument("PlaneMultigraph::build: bad dart list");
            g.vertex_of[d] = v;
            g.sigma[d] = cyc[(i + 1) % cyc.size()];
        }
    }
    g.vertex_color = std::move(colors);
    if (!g.valid()) throw std::invalid_argument("PlaneMultigraph::build: inconsistent map");
    return g;
}

bool PlaneMultigraph::valid() const {
    const int nd = darts();
    if (nd % 2 != 0) return false;
    if (static_cast<int>(twin.size()) != nd || static_cast<int>(vertex_of.size()) != nd) return false;
    if (!vertex_color.empty() && static_cast<int>(vertex_color.size()) != n_vertices) return false;
    for (int d = 0; d < nd; ++d) {
        if (sigma[d] < 0 || sigma[d] >= nd || twin[d] < 0 || twin[d] >= nd) return false;
        if (twin[twin[d]] != d || twin[d] == d) return false;
        if (vertex_of[d] < 0 || vertex_of[d] >= n_vertices) return false;
        if (vertex_of[sigma[d]] != vertex_of[d]) return false;
    }
    // sigma must be a permutation
    std::vector<char> seen(nd, 0);
    for (int d = 0; d < nd; ++d) {
        if (seen[sigma[d]]) return false;
        seen[sigma[d]] = 1;
    }
    return true;
}

std::vector<std::vector<int>> PlaneMultigraph::faces() const {
    const int nd = darts();
    std::vector<char> used(nd, 0);
    std::vector<std::vector<int>> out;
    for (int d0 = 0; d0 < nd; ++d0) {
        if (used[d0]) continue;
        std::vector<int> walk;
        int d = d0;
        do {
            used[d] = 1;
            walk.push_back(d);
            d = sigma[twin[d]];
        } while (d != d0);
        out.push_back(std::move(walk));
    }
    return out;
}

std::vector<int> PlaneMultigraph::component_of_vertex() const {
    std::vector<int> parent(n_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int d = 0; d < darts(); ++d) {
        const int a = find(vertex_of[d]), b = find(vertex_of[twin[d]]);
        if (a != b) parent[a] = b;
    }
    std::vector<int> comp(n_vertices, -1);
    int next = 0;
    for (int v = 0; v < n_vertices; ++v) {
        const int r = find(v);
        if (comp[r] < 0) comp[r] = next++;
        comp[v] = comp[r];
    }
    return comp;
}

std::vector<int> PlaneMultigraph::component_euler() const {
    const auto comp = component_of_vertex();
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<int> V(ncomp, 0), E(ncomp, 0), F(ncomp, 0);
    for (int v = 0; v < n_vertices; ++v) ++V[comp[v]];
    for (int d = 0; d < darts(); ++d)
        if (d < twin[d]) ++E[comp[vertex_of[d]]];
    for (const auto& face : faces()) ++F[comp[vertex_of[face[0]]]];
    std::vector<int> chi(ncomp);
    for (int c = 0; c < ncomp; ++c)
        chi[c] = V[c] - E[c] + (E[c] == 0 ? 1 : F[c]);   // a bare vertex has one face
    return chi;
}

namespace {

// BFS dart labeling from a root; code entry per dart label: sigma image, twin
// image, vertex color. Deterministic given the root and orientation.
std::vector<int> rooted_code(const std::vector<int>& sigma, const std::vector<int>& twin,
                             const std::vector<int>& vertex_of, const std::vector<int>& color,
                             const std::vector<int>& comp_darts, int root,
                             std::vector<int>* label_out = nullptr) {
    const int nd = static_cast<int>(sigma.size());
    std::vector<int> label(nd, -1);
    std::vector<int> by_label;
    by_label.reserve(comp_darts.size());
    auto assign = [&](int d) {
        label[d] = static_cast<int>(by_label.size());
        by_label.push_back(d);
    };
    assign(root);
    for (size_t head = 0; head < by_label.size(); ++head) {
        const int d = by_label[head];
        // sweep the vertex orbit, then cross the edge
        for (int e = sigma[d]; e != d; e = sigma[e])
            if (label[e] < 0) assign(e);
        if (label[twin[d]] < 0) assign(twin[d]);
    }
    std::vector<int> code;
    code.reserve(3 * by_label.size());
    for (int d : by_label) {
        code.push_back(label[sigma[d]]);
        code.push_back(label[twin[d]]);
        code.push_back(color.empty() ? 0 : color[vertex_of[d]]);
    }
    if (label_out) *label_out = label;
    return code;
}

}  // namespace

CanonicalData canonical_code_labeled(const PlaneMultigraph& g) {
    const int nd = g.darts();
    if (nd == 0) throw std::invalid_argument("canonical_code_labeled: map has no darts");
    const auto comp = g.component_of_vertex();
    for (int d = 0; d < nd; ++d)
        if (comp[g.vertex_of[d]] != comp[g.vertex_of[0]])
            throw std::invalid_argument("canonical_code_labeled: map not connected");
    std::vector<int> all(nd);
    std::iota(all.begin(), all.end(), 0);
    CanonicalData best;
    for (int root = 0; root < nd; ++root) {
        std::vector<int> label;
        auto code = rooted_code(g.sigma, g.twin, g.vertex_of, g.vertex_color, all, root, &label);
        if (best.code.empty() || code < best.code) {
            best.code = std::move(code);
            best.dart_label = std::move(label);
        }
    }
    return best;
}

std::vector<int> canonical_code(const PlaneMultigraph& g, CodePolicy pol) {
    const int nd = g.darts();
    std::vector<int> inv_sigma(nd);
    for (int d = 0; d < nd; ++d) inv_sigma[g.sigma[d]] = d;

    std::vector<int> color = g.vertex_color;
    std::vector<int> swapped = color;
    if (pol.colorswap)
        for (int& c : swapped) c = (c == 0 ? 1 : (c == 1 ? 0 : c));

    const auto comp = g.component_of_vertex();
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<std::vector<int>> comp_darts(ncomp);
    for (int d = 0; d < nd; ++d) comp_darts[comp[g.vertex_of[d]]].push_back(d);

    std::vector<std::vector<int>> comp_codes;
    std::vector<std::vector<int>> isolated_colors_by_comp;   // one entry per dartless component
    for (int c = 0; c < ncomp; ++c) {
        if (comp_darts[c].empty()) continue;
        std::vector<int> best;
        auto consider = [&](const std::vector<int>& sg, const std::vector<int>& col) {
            for (int root : comp_darts[c]) {
                auto code = rooted_code(sg, g.twin, g.vertex_of, col, comp_darts[c], root);
                if (best.empty() || code < best) best = std::move(code);
            }
        };
        consider(g.sigma, color);
        if (pol.mirror) consider(inv_sigma, color);
        if (pol.colorswap) {
            consider(g.sigma, swapped);
            if (pol.mirror) consider(inv_sigma, swapped);
        }
        comp_codes.push_back(std::move(best));
    }

    std::vector<int> isolated;
    for (int v = 0; v < g.n_vertices; ++v) {
        bool has_dart = false;
        for (int d = 0; d < nd && !has_dart; ++d)
            if (g.vertex_of[d] == v) has_dart = true;
        if (!has_dart) {
            int c0 = color.empty() ? 0 : color[v];
            if (pol.colorswap) c0 = std::min(c0, swapped.empty() ? 0 : swapped[v]);
            isolated.push_back(c0);
        }
    }
    std::sort(isolated.begin(), isolated.end());
    std::sort(comp_codes.begin(), comp_codes.end());

    std::vector<int> out;
    out.push_back(g.n_vertices);
    out.push_back(nd);
    for (const auto& cc : comp_codes) {
        out.push_back(-1);   // component separator
        out.insert(out.end(), cc.begin(), cc.end());
    }
    out.push_back(-2);
    out.insert(out.end(), isolated.begin(), isolated.end());
    return out;
}

std::string code_string(const std::vector<int>& code) {
    std::ostringstream os;
    for (size_t i = 0; i < code.size(); ++i) {
        if (i) os << ',';
        os << code[i];
    }
    return os.str();
}

}  // namespace sphereflow
