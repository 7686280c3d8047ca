#pragma once

#include "sphereflow/maps.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sphereflow {

// embedded tree: per-vertex neighbor lists in ccw cyclic order
struct PlaneTree {
    std::vector<std::vector<int>> nbr;
    int size() const { return static_cast<int>(nbr.size()); }
};

// dart ids: dart at vertex v toward nbr[v][i]; see tree_map for the numbering
PlaneMultigraph tree_map(const PlaneTree& t, std::vector<int> colors = {});
int tree_dart(const PlaneTree& t, int v, int i);
std::pair<int, int> tree_dart_endpoint(const PlaneTree& t, int dart);   // (vertex, nbr index)

// canonical form up to rotation of the embedding; mirror images stay distinct
std::vector<int> tree_code(const PlaneTree& t);
// canonical form plus the dart relabeling that realizes it (for matching
// corners between isomorphic embedded trees)
struct TreeCanonical {
    std::vector<int> code;
    std::vector<int> dart_label;
};
TreeCanonical tree_canonical(const PlaneTree& t);

std::vector<PlaneTree> enumerate_plane_trees(int n);   // one representative per class
std::uint64_t count_plane_trees(int n);                // closed form

// face walk of the single face: 2(n-1) vertex visits; the corner at position k
// lies at walk[k] before the dart toward walk[k+1]
std::vector<int> contour_walk(const PlaneTree& t, int start_vertex, int start_nbr);

// rebuild the embedded tree from a cyclic vertex-label walk
struct WalkParse {
    bool ok = false;
    std::string reason;
    PlaneTree tree;
    std::vector<int> label_of_vertex;   // tree vertex -> input label
    std::vector<int> corner_vertex;     // walk position -> tree vertex
    std::vector<int> corner_dart;       // walk position -> out-dart in `tree`
};
WalkParse parse_contour_walk(const std::vector<int>& walk);

// non-crossing spanning tree on n points of a circle
struct NcTree {
    int n = 0;
    std::vector<std::pair<int, int>> chords;   // i < j
};

bool nc_is_valid(const NcTree& t);
std::vector<int> nc_code(const NcTree& t);     // min over the 2n dihedral relabelings
// region tree on the n interleaved slots (slot p sits between points p and p+1);
// chord k of the dual crosses chord k of the input
NcTree nc_dual(const NcTree& t);

std::vector<NcTree> enumerate_nc_trees_labeled(int n);
std::vector<NcTree> enumerate_nc_tree_classes(int n);
std::uint64_t count_nc_trees_labeled(int n);
std::uint64_t count_nc_tree_classes(int dp);   // trees on dp+1 points

}  // namespace sphereflow
