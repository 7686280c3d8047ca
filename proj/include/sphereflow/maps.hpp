#pragma once

#include <string>
#include <vector>

namespace sphereflow {

// Combinatorial map on the sphere: darts with a ccw successor around their
// vertex (sigma) and an edge involution (twin). Vertices may be isolated.
struct PlaneMultigraph {
    std::vector<int> sigma;          // dart -> ccw next dart at the same vertex
    std::vector<int> twin;           // dart -> opposite dart of the same edge
    std::vector<int> vertex_of;      // dart -> vertex
    std::vector<int> vertex_color;   // optional, empty or size n_vertices
    int n_vertices = 0;

    int darts() const { return static_cast<int>(sigma.size()); }
    int edges() const { return darts() / 2; }

    // build from per-vertex ccw dart lists plus the pairing
    static PlaneMultigraph build(const std::vector<std::vector<int>>& rot,
                                 const std::vector<int>& twin,
                                 std::vector<int> colors = {});

    bool valid() const;

    // orbits of sigma o twin; on the sphere these are the face boundary walks
    std::vector<std::vector<int>> faces() const;

    // connected components over vertices (darts connect, isolated vertices are singletons)
    std::vector<int> component_of_vertex() const;

    // per-component V - E + F; all equal 2 exactly when the embedding data is spherical
    std::vector<int> component_euler() const;
};

struct CodePolicy {
    bool mirror = false;      // also minimize over the reflected map
    bool colorswap = false;   // also minimize over swapping colors 0 and 1
};

// canonical form: per component, BFS dart relabeling minimized over root darts
// (and reflections per policy); components sorted, isolated vertex colors appended.
// Nesting of components on the sphere is not captured.
std::vector<int> canonical_code(const PlaneMultigraph& g, CodePolicy pol = {});

// canonical code of a connected map together with the dart relabeling that
// attains it; two isomorphic maps match darts through equal labels
struct CanonicalData {
    std::vector<int> code;
    std::vector<int> dart_label;
};
CanonicalData canonical_code_labeled(const PlaneMultigraph& g);

std::string code_string(const std::vector<int>& code);

}  // namespace sphereflow
