#pragma once

#include "sphereflow/separatrix.hpp"
#include "sphereflow/trees.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sphereflow {

// separatrix skeleton as a sphere map: equilibria are vertices, one edge per
// separatrix; vertex colors 0 source, 1 sink, 2 pole
struct RefinedSkeleton {
    PlaneMultigraph map;
    std::vector<int> vertex_record;
    std::vector<int> dart_separatrix;
};

// connection multigraphs: one blue edge per pole joining the terminal sinks of
// its unstable pair, one red edge joining the terminal sources of its stable pair
struct ConnectionGraphs {
    PlaneMultigraph blue;
    PlaneMultigraph red;
    std::vector<int> blue_vertex_record, red_vertex_record;
    std::vector<int> blue_edge_pole, red_edge_pole;
};

struct PortraitChecks {
    bool colors_ok = false;    // blue separatrices end at sinks, red at sources
    bool euler_ok = false;     // every skeleton component has V - E + F = 2
    bool quads_ok = false;     // every face is a source-pole-sink-pole quad
    bool duality_ok = false;   // faces glued across red cuts pair with sources,
                               // glued across blue cuts with sinks
    std::string detail;
    bool pass() const { return colors_ok && euler_ok && quads_ok && duality_ok; }
};

struct NormalizedPortrait {
    bool ok = false;
    std::string reason;
    RefinedSkeleton skeleton;
    ConnectionGraphs graphs;
    PortraitChecks checks;
};

// boundary sector structure of a polynomial field read as a plane tree
struct PolynomialPortrait {
    bool ok = false;
    std::string reason;
    std::vector<int> sector_terminals;    // per boundary label: terminal record id
    std::vector<double> sector_angles;    // per boundary label: direction arg w
    std::vector<int> sector_separatrix;   // per boundary label: separatrix id
    WalkParse parse;                      // embedded tree; corner k sits at boundary label k
    std::vector<int> vertex_kind;         // tree vertex -> 0 source, 1 sink
};

struct AntiPolynomialPortrait {
    bool ok = false;
    std::string reason;
    NcTree blue;    // on the d'+1 sink nodes, one chord per pole
    NcTree red;     // on the source nodes
    std::vector<int> blue_chord_pole, red_chord_pole;
    bool dual_ok = false;   // red matches the dual of blue, chords crossing pole by pole
};

struct Portrait {
    FieldMode mode = FieldMode::General;
    std::optional<NormalizedPortrait> normalized;
    std::optional<PolynomialPortrait> polynomial;
    std::optional<AntiPolynomialPortrait> antipolynomial;
};

Portrait build_portrait(const RationalField& f, const Classification& cls,
                        const SeparatrixSet& seps);

// one-stop pipeline: classify, trace, read off the portrait
struct Analysis {
    Classification cls;
    SeparatrixSet seps;
    Portrait portrait;
};
Analysis analyze(const RationalField& f, const SeparatrixOptions& opt = {});

}  // namespace sphereflow
