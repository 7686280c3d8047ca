#include "sphereflow/trees.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sphereflow {

namespace {

using int128 = __int128;

int128 binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    int128 c = 1;
    for (int i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
    return c;
}

int euler_phi(int x) {
    int out = x;
    for (int p = 2; p * p <= x; ++p) {
        if (x % p) continue;
        while (x % p == 0) x /= p;
        out -= out / p;
    }
    if (x > 1) out -= out / x;
    return out;
}

}  // namespace

int tree_dart(const PlaneTree& t, int v, int i) {
    int base = 0;
    for (int u = 0; u < v; ++u) base += static_cast<int>(t.nbr[u].size());
    return base + i;
}

std::pair<int, int> tree_dart_endpoint(const PlaneTree& t, int dart) {
    for (int v = 0; v < t.size(); ++v) {
        const int deg = static_cast<int>(t.nbr[v].size());
        if (dart < deg) return {v, dart};
        dart -= deg;
    }
    throw std::out_of_range("tree_dart_endpoint");
}

PlaneMultigraph tree_map(const PlaneTree& t, std::vector<int> colors) {
    const int n = t.size();
    std::vector<std::vector<int>> rot(n);
    int next = 0;
    for (int v = 0; v < n; ++v)
        for (size_t i = 0; i < t.nbr[v].size(); ++i) rot[v].push_back(next++);
    std::vector<int> twin(next, -1);
    for (int v = 0; v < n; ++v)
        for (size_t i = 0; i < t.nbr[v].size(); ++i) {
            const int u = t.nbr[v][i];
            if (u == v) throw std::invalid_argument("tree_map: loop");
            if (twin[rot[v][i]] >= 0) continue;
            // match with the (unique in a simple tree) reverse dart
            int rev = -1;
            for (size_t j = 0; j < t.nbr[u].size(); ++j)
                if (t.nbr[u][j] == v && twin[rot[u][j]] < 0) { rev = rot[u][j]; break; }
            if (rev < 0) throw std::invalid_argument("tree_map: asymmetric adjacency");
            twin[rot[v][i]] = rev;
            twin[rev] = rot[v][i];
        }
    return PlaneMultigraph::build(rot, twin, std::move(colors));
}

std::vector<int> tree_code(const PlaneTree& t) { return canonical_code(tree_map(t)); }

TreeCanonical tree_canonical(const PlaneTree& t) {
    const auto cd = canonical_code_labeled(tree_map(t));
    return {cd.code, cd.dart_label};
}

namespace {

PlaneTree tree_from_dyck(const std::vector<int>& steps) {
    PlaneTree t;
    t.nbr.push_back({});
    std::vector<int> stack{0};
    for (int s : steps) {
        if (s > 0) {
            const int child = t.size();
            t.nbr.push_back({stack.back()});   // parent listed first
            t.nbr[stack.back()].push_back(child);
            stack.push_back(child);
        } else {
            stack.pop_back();
        }
    }
    return t;
}

void dyck_rec(std::vector<int>& steps, int up, int down, int m,
              std::vector<PlaneTree>& out) {
    if (up == m && down == m) {
        out.push_back(tree_from_dyck(steps));
        return;
    }
    if (up < m) {
        steps.push_back(1);
        dyck_rec(steps, up + 1, down, m, out);
        steps.pop_back();
    }
    if (down < up) {
        steps.push_back(-1);
        dyck_rec(steps, up, down + 1, m, out);
        steps.pop_back();
    }
}

}  // namespace

std::vector<PlaneTree> enumerate_plane_trees(int n) {
    if (n < 1) return {};
    if (n == 1) return {PlaneTree{{{}}}};
    std::vector<PlaneTree> rooted;
    std::vector<int> steps;
    dyck_rec(steps, 0, 0, n - 1, rooted);
    std::set<std::vector<int>> seen;
    std::vector<PlaneTree> out;
    for (auto& t : rooted)
        if (seen.insert(tree_code(t)).second) out.push_back(std::move(t));
    return out;
}

std::uint64_t count_plane_trees(int n) {
    if (n < 1) throw std::invalid_argument("count_plane_trees: n >= 1");
    if (n == 1) return 1;
    const int m = n - 1;
    int128 T = 2 * binom(2 * m, m);
    if (n % 2 == 0) T += int128(n) * binom(n, n / 2);
    int128 S = 0;
    for (int k = 1; k < m; ++k)
        if (m % k == 0) S += binom(2 * k, k) * euler_phi(m / k);
    T += 2 * int128(n) * S;
    const int128 D = int128(4) * m * n;
    if (T % D != 0) throw std::logic_error("count_plane_trees: non-integral");
    return static_cast<std::uint64_t>(T / D);
}

std::vector<int> contour_walk(const PlaneTree& t, int start_vertex, int start_nbr) {
    const int m = t.size() - 1;
    std::vector<int> walk;
    int v = start_vertex, i = start_nbr;
    for (int step = 0; step < 2 * m; ++step) {
        walk.push_back(v);
        const int u = t.nbr[v][i];
        // continue ccw after the dart back to v
        int j = -1;
        const int deg = static_cast<int>(t.nbr[u].size());
        for (int k = 0; k < deg; ++k)
            if (t.nbr[u][k] == v) { j = k; break; }
        if (t.nbr[u][j] != v) throw std::logic_error("contour_walk: adjacency");
        v = u;
        i = (j + 1) % deg;
    }
    return walk;
}

WalkParse parse_contour_walk(const std::vector<int>& walk) {
    WalkParse out;
    const int L = static_cast<int>(walk.size());
    if (L == 0 || L % 2 != 0) {
        out.reason = "walk length must be positive and even";
        return out;
    }
    // relabel by first appearance
    std::map<int, int> id;
    std::vector<int> label;
    std::vector<int> w(L);
    for (int k = 0; k < L; ++k) {
        auto it = id.find(walk[k]);
        if (it == id.end()) {
            it = id.emplace(walk[k], static_cast<int>(label.size())).first;
            label.push_back(walk[k]);
        }
        w[k] = it->second;
    }
    const int n = static_cast<int>(label.size());
    if (2 * (n - 1) != L) {
        out.reason = "vertex count does not match walk length";
        return out;
    }

    // each directed edge must occur exactly once; corners fix the rotation
    std::map<std::pair<int, int>, int> succ;   // dart (v->u) -> ccw next dart target
    for (int k = 0; k < L; ++k) {
        const int prev = w[(k - 1 + L) % L], v = w[k], next = w[k + 1 == L ? 0 : k + 1];
        if (prev == v || next == v) {
            out.reason = "walk repeats a vertex consecutively";
            return out;
        }
        if (!succ.emplace(std::make_pair(v, prev), next).second) {
            out.reason = "directed edge traversed twice";
            return out;
        }
    }
    // reverse darts must exist
    for (const auto& [d, nx] : succ) {
        (void)nx;
        if (!succ.count({d.second, d.first})) {
            out.reason = "edge traversed once";
            return out;
        }
    }

    // rotation at v: follow succ from any incident dart
    out.tree.nbr.assign(n, {});
    std::vector<char> placed_vertex(n, 0);
    for (const auto& [d, nx] : succ) {
        (void)nx;
        const int v = d.first;
        if (placed_vertex[v]) continue;
        placed_vertex[v] = 1;
        int u = d.second;
        const int u0 = u;
        do {
            out.tree.nbr[v].push_back(u);
            auto it = succ.find({v, u});
            u = it->second;
        } while (u != u0 && static_cast<int>(out.tree.nbr[v].size()) <= n);
        if (u != u0) {
            out.reason = "rotation does not close";
            return out;
        }
    }
    // degrees must account for every dart (single cycle per vertex)
    int total = 0;
    for (int v = 0; v < n; ++v) total += static_cast<int>(out.tree.nbr[v].size());
    if (total != L) {
        out.reason = "rotation misses darts";
        return out;
    }
    // acyclicity: n vertices with n-1 distinct undirected edges and connectivity
    std::set<std::pair<int, int>> und;
    for (const auto& [d, nx] : succ) {
        (void)nx;
        und.insert({std::min(d.first, d.second), std::max(d.first, d.second)});
    }
    if (static_cast<int>(und.size()) != n - 1) {
        out.reason = "edge count is not n-1";
        return out;
    }

    out.label_of_vertex = label;
    out.corner_vertex.resize(L);
    out.corner_dart.resize(L);
    for (int k = 0; k < L; ++k) {
        const int v = w[k], next = w[k + 1 == L ? 0 : k + 1];
        out.corner_vertex[k] = v;
        int idx = -1;
        for (size_t i = 0; i < out.tree.nbr[v].size(); ++i)
            if (out.tree.nbr[v][i] == next) { idx = static_cast<int>(i); break; }
        out.corner_dart[k] = tree_dart(out.tree, v, idx);
    }
    out.ok = true;
    return out;
}

bool nc_is_valid(const NcTree& t) {
    const int n = t.n;
    if (static_cast<int>(t.chords.size()) != std::max(0, n - 1)) return false;
    for (auto [i, j] : t.chords)
        if (i < 0 || j <= i || j >= n) return false;
    for (size_t a = 0; a < t.chords.size(); ++a)
        for (size_t b = a + 1; b < t.chords.size(); ++b) {
            auto [i, j] = t.chords[a];
            auto [k, l] = t.chords[b];
            if (i == k && j == l) return false;
            const bool cross = (i < k && k < j && j < l) || (k < i && i < l && l < j);
            if (cross) return false;
        }
    // spanning and acyclic
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [i, j] : t.chords) {
        const int a = find(i), b = find(j);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

std::vector<int> nc_code(const NcTree& t) {
    const int n = t.n;
    std::vector<int> best;
    for (int refl = 0; refl < 2; ++refl)
        for (int r = 0; r < n; ++r) {
            std::vector<std::pair<int, int>> mapped;
            mapped.reserve(t.chords.size());
            for (auto [i, j] : t.chords) {
                int a = refl ? (n - i) % n : i;
                int b = refl ? (n - j) % n : j;
                a = (a + r) % n;
                b = (b + r) % n;
                mapped.emplace_back(std::min(a, b), std::max(a, b));
            }
            std::sort(mapped.begin(), mapped.end());
            std::vector<int> code{n};
            for (auto [a, b] : mapped) {
                code.push_back(a);
                code.push_back(b);
            }
            if (best.empty() || code < best) best = std::move(code);
        }
    if (best.empty()) best = {n};
    return best;
}

NcTree nc_dual(const NcTree& t) {
    const int n = t.n;
    if (!nc_is_valid(t)) throw std::invalid_argument("nc_dual: not a non-crossing tree");
    NcTree out;
    out.n = n;
    if (n <= 1) return out;

    std::vector<std::vector<int>> opens(n), closes(n);   // chord indices
    for (size_t c = 0; c < t.chords.size(); ++c) {
        opens[t.chords[c].first].push_back(static_cast<int>(c));
        closes[t.chords[c].second].push_back(static_cast<int>(c));
    }
    for (int p = 0; p < n; ++p) {
        std::sort(closes[p].begin(), closes[p].end(), [&](int a, int b) {
            return t.chords[a].first > t.chords[b].first;   // innermost closes first
        });
        std::sort(opens[p].begin(), opens[p].end(), [&](int a, int b) {
            return t.chords[a].second > t.chords[b].second;   // outermost opens first
        });
    }

    std::vector<int> stack;
    std::vector<std::pair<int, int>> chord_regions(t.chords.size(), {-1, -1});
    std::vector<int> arc_region(n, -1);
    int current = 0, next_region = 1;
    for (int p = 0; p < n; ++p) {
        for (int c : closes[p]) {
            const int closed = current;
            current = stack.back();
            stack.pop_back();
            chord_regions[c] = {closed, current};
        }
        for (int c : opens[p]) {
            (void)c;
            stack.push_back(current);
            current = next_region++;
        }
        arc_region[p] = current;
    }
    if (!stack.empty() || current != 0 || next_region != n)
        throw std::logic_error("nc_dual: region scan failed");

    std::vector<int> arc_of_region(n, -1);
    for (int p = 0; p < n; ++p) {
        if (arc_of_region[arc_region[p]] != -1)
            throw std::logic_error("nc_dual: region meets two arcs");
        arc_of_region[arc_region[p]] = p;
    }
    for (auto [ra, rb] : chord_regions) {
        const int a = arc_of_region[ra], b = arc_of_region[rb];
        out.chords.emplace_back(std::min(a, b), std::max(a, b));
    }
    return out;
}

namespace {

void nc_rec(int n, int start, std::vector<std::pair<int, int>>& all,
            std::vector<int>& chosen, std::vector<int>& parent,
            std::vector<NcTree>& out) {
    const int need = n - 1 - static_cast<int>(chosen.size());
    if (need == 0) {
        NcTree t;
        t.n = n;
        for (int c : chosen) t.chords.push_back(all[c]);
        out.push_back(std::move(t));
        return;
    }
    if (static_cast<int>(all.size()) - start < need) return;

    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };

    for (int c = start; c < static_cast<int>(all.size()); ++c) {
        auto [i, j] = all[c];
        bool cross = false;
        for (int e : chosen) {
            auto [k, l] = all[e];
            if ((k < i && i < l && l < j) || (i < k && k < j && j < l)) { cross = true; break; }
        }
        if (cross) continue;
        const int a = find(i), b = find(j);
        if (a == b) continue;
        parent[a] = b;
        chosen.push_back(c);
        nc_rec(n, c + 1, all, chosen, parent, out);
        chosen.pop_back();
        parent[a] = a;
    }
}

}  // namespace

std::vector<NcTree> enumerate_nc_trees_labeled(int n) {
    if (n < 1) return {};
    if (n == 1) return {NcTree{1, {}}};
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
    std::vector<int> chosen, parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<NcTree> out;
    nc_rec(n, 0, all, chosen, parent, out);
    return out;
}

std::vector<NcTree> enumerate_nc_tree_classes(int n) {
    std::set<std::vector<int>> seen;
    std::vector<NcTree> out;
    for (auto& t : enumerate_nc_trees_labeled(n))
        if (seen.insert(nc_code(t)).second) out.push_back(std::move(t));
    return out;
}

std::uint64_t count_nc_trees_labeled(int n) {
    if (n < 1) throw std::invalid_argument("count_nc_trees_labeled: n >= 1");
    if (n == 1) return 1;
    const int128 T = binom(3 * n - 3, n - 1);
    if (T % (2 * n - 1) != 0) throw std::logic_error("count_nc_trees_labeled: non-integral");
    return static_cast<std::uint64_t>(T / (2 * n - 1));
}

std::uint64_t count_nc_tree_classes(int dp) {
    if (dp < 0) throw std::invalid_argument("count_nc_tree_classes: dp >= 0");
    if (dp == 0) return 1;
    const int128 A = binom(3 * dp, dp);
    const int128 den = int128(2 * dp + 1) * (2 * dp + 2);
    int128 T, D;
    if (dp % 2 == 1) {
        T = A * (3 * dp + 1) + 3 * den * binom((3 * dp + 1) / 2, (dp - 1) / 2);
        D = den * (3 * dp + 1);
    } else {
        T = A + int128(2 * dp + 1) * binom(3 * dp / 2, dp / 2);
        D = den;
    }
    if (T % D != 0) throw std::logic_error("count_nc_tree_classes: non-integral");
    return static_cast<std::uint64_t>(T / D);
}

}  // namespace sphereflow
