#include "doctest.h"

#include "sphereflow/trees.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace sphereflow;

namespace {

// rotate the embedding: new root nbr order shifted, labels fixed
PlaneTree relabel(const PlaneTree& t, const std::vector<int>& perm) {
    PlaneTree out;
    out.nbr.resize(t.size());
    for (int v = 0; v < t.size(); ++v) {
        out.nbr[perm[v]].clear();
        for (int u : t.nbr[v]) out.nbr[perm[v]].push_back(perm[u]);
    }
    return out;
}

PlaneTree rotate_at(const PlaneTree& t, int v, int k) {
    PlaneTree out = t;
    std::rotate(out.nbr[v].begin(), out.nbr[v].begin() + k, out.nbr[v].end());
    return out;
}

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

NcTree nc_rotate(const NcTree& t, int s) {
    NcTree out;
    out.n = t.n;
    for (auto [i, j] : t.chords) {
        int a = (i + s) % t.n, b = (j + s) % t.n;
        if (a > b) std::swap(a, b);
        out.chords.push_back({a, b});
    }
    std::sort(out.chords.begin(), out.chords.end());
    return out;
}

NcTree nc_reflect(const NcTree& t) {
    NcTree out;
    out.n = t.n;
    for (auto [i, j] : t.chords) {
        int a = (t.n - i) % t.n, b = (t.n - j) % t.n;
        if (a > b) std::swap(a, b);
        out.chords.push_back({a, b});
    }
    std::sort(out.chords.begin(), out.chords.end());
    return out;
}

bool chords_cross(std::pair<int, int> c, std::pair<int, int> d) {
    auto inside = [&](int x) { return c.first < x && x < c.second; };
    return inside(d.first) != inside(d.second);
}

}  // namespace

TEST_CASE("plane tree enumeration matches the closed form") {
    // class counts for trees on n vertices, n = 2..9
    const std::uint64_t expect[] = {1, 1, 2, 3, 6, 14, 34, 95};
    for (int n = 2; n <= 9; ++n) {
        const auto all = enumerate_plane_trees(n);
        CHECK(all.size() == expect[n - 2]);
        CHECK(count_plane_trees(n) == expect[n - 2]);
        // every representative has a distinct code
        std::set<std::vector<int>> codes;
        for (const auto& t : all) {
            REQUIRE(t.size() == n);
            codes.insert(tree_code(t));
        }
        CHECK(codes.size() == all.size());
    }
    CHECK(count_plane_trees(16) == 323396);
}

TEST_CASE("tree code is invariant under relabeling but sees the embedding") {
    // star with 3 leaves: any rotation at the hub is the same embedded tree
    PlaneTree star;
    star.nbr = {{1, 2, 3}, {0}, {0}, {0}};
    CHECK(tree_code(rotate_at(star, 0, 1)) == tree_code(star));
    CHECK(tree_code(relabel(star, {3, 0, 1, 2})) == tree_code(star));

    // hub carrying a leaf, a chain and a cherry: the two cyclic orders are mirror
    // images and must stay distinct
    PlaneTree a, b;
    a.nbr = {{1, 2, 3}, {0}, {0, 4}, {0, 5, 6}, {2}, {3}, {3}};
    b.nbr = {{1, 3, 2}, {0}, {0, 4}, {0, 5, 6}, {2}, {3}, {3}};
    CHECK(tree_code(a) != tree_code(b));
}

TEST_CASE("contour walk visits every edge twice and parses back") {
    PlaneTree t;
    t.nbr = {{1, 2}, {0, 3, 4}, {0}, {1}, {1}};
    const std::vector<int> walk = contour_walk(t, 0, 0);
    REQUIRE(walk.size() == 2 * (t.size() - 1));
    // each undirected edge appears exactly twice as consecutive visits
    std::map<std::pair<int, int>, int> seen;
    for (size_t k = 0; k < walk.size(); ++k) {
        int u = walk[k], v = walk[(k + 1) % walk.size()];
        seen[{std::min(u, v), std::max(u, v)}]++;
    }
    for (const auto& [e, c] : seen) CHECK(c == 2);

    const WalkParse wp = parse_contour_walk(walk);
    REQUIRE(wp.ok);
    CHECK(tree_code(wp.tree) == tree_code(t));
    CHECK(wp.corner_vertex.size() == walk.size());
    // corners carry the walk labels back
    for (size_t k = 0; k < walk.size(); ++k)
        CHECK(wp.label_of_vertex[wp.corner_vertex[k]] == walk[k]);
}

TEST_CASE("walks that do not describe a tree are rejected") {
    CHECK_FALSE(parse_contour_walk({0, 1, 0, 2, 1}).ok);      // odd length
    CHECK_FALSE(parse_contour_walk({0, 1, 2, 0, 1, 2}).ok);   // a cycle, not a tree
}

TEST_CASE("nc tree enumeration matches the closed forms") {
    const std::uint64_t classes[] = {1, 1, 3, 7, 28, 108, 507, 2431};
    for (int dp = 1; dp <= 8; ++dp) {
        CHECK(count_nc_tree_classes(dp) == classes[dp - 1]);
        if (dp <= 6) CHECK(enumerate_nc_tree_classes(dp + 1).size() == classes[dp - 1]);
    }
    // labeled: C(3n-3, n-1)/(2n-1)
    for (int n = 2; n <= 7; ++n) {
        const std::uint64_t want = binom(3 * n - 3, n - 1) / (2 * n - 1);
        CHECK(count_nc_trees_labeled(n) == want);
        if (n <= 6) CHECK(enumerate_nc_trees_labeled(n).size() == want);
    }
    CHECK(count_nc_trees_labeled(7) == 1428);
}

TEST_CASE("nc validity catches crossings and non-trees") {
    NcTree path;
    path.n = 4;
    path.chords = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(nc_is_valid(path));

    NcTree crossing;
    crossing.n = 4;
    crossing.chords = {{0, 2}, {1, 3}, {0, 1}};
    CHECK_FALSE(nc_is_valid(crossing));

    NcTree cycle;
    cycle.n = 4;
    cycle.chords = {{0, 1}, {1, 2}, {0, 2}};
    CHECK_FALSE(nc_is_valid(cycle));

    NcTree disconnected;
    disconnected.n = 4;
    disconnected.chords = {{0, 1}, {2, 3}, {0, 1}};
    CHECK_FALSE(nc_is_valid(disconnected));
}

TEST_CASE("nc code is a dihedral invariant") {
    for (const auto& t : enumerate_nc_trees_labeled(5)) {
        const auto code = nc_code(t);
        for (int s = 1; s < t.n; ++s) CHECK(nc_code(nc_rotate(t, s)) == code);
        CHECK(nc_code(nc_reflect(t)) == code);
    }
    // distinct classes have distinct codes
    std::set<std::vector<int>> codes;
    const auto classes = enumerate_nc_tree_classes(5);
    for (const auto& t : classes) codes.insert(nc_code(t));
    CHECK(codes.size() == classes.size());
}

TEST_CASE("nc dual crosses chord for chord and squares to a rotation") {
    for (const auto& t : enumerate_nc_trees_labeled(5)) {
        const NcTree d = nc_dual(t);
        REQUIRE(d.n == t.n);
        REQUIRE(d.chords.size() == t.chords.size());
        CHECK(nc_is_valid(d));
        // chord k of the dual crosses chord k of the input once the slot offset
        // is folded in: dual point p sits between input points p and p+1, so
        // compare on the doubled circle
        for (size_t k = 0; k < t.chords.size(); ++k) {
            const auto [a, b] = t.chords[k];
            const auto [c, e] = d.chords[k];
            // interleaving test on the 2n-gon: input at even, dual at odd slots
            const std::pair<int, int> ci{2 * a, 2 * b}, dj{2 * c + 1, 2 * e + 1};
            CHECK(chords_cross(ci, dj));
        }
        // applying the dual twice gives the input rotated by one slot backward
        const NcTree dd = nc_dual(d);
        NcTree rot = nc_rotate(t, t.n - 1);
        NcTree ddn = dd;
        std::sort(ddn.chords.begin(), ddn.chords.end());
        CHECK(ddn.chords == rot.chords);
    }
}

TEST_CASE("exactly three of the seven classes on five points are self-dual") {
    int self_dual = 0;
    for (const auto& t : enumerate_nc_tree_classes(5))
        if (nc_code(nc_dual(t)) == nc_code(t)) ++self_dual;
    CHECK(self_dual == 3);
}
