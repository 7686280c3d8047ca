#pragma once

#include "sphereflow/portrait.hpp"

namespace sphereflow {

struct RealizationResult {
    bool ok = false;
    std::string reason;
    std::optional<RationalField> field;
    std::vector<std::string> plan;   // one line per induction step
};

// realize an embedded tree on d >= 2 vertices as the sector structure of a
// degree d polynomial field; verified by reanalyzing the constructed field
RealizationResult realize_polynomial(const PlaneTree& target);
bool verify_polynomial(const RationalField& f, const PlaneTree& target);

// target for a normalized rational field, given as its two connection
// multigraphs; darts 2p and 2p+1 form pole p's edge in each graph
struct RationalTarget {
    PlaneMultigraph blue;   // vertices are sinks
    PlaneMultigraph red;    // vertices are sources
};
RealizationResult realize_rational(const RationalTarget& target);
bool verify_rational(const RationalField& f, const RationalTarget& target);

// realize a non-crossing spanning tree (up to dihedral symmetry) as the sink
// connection structure of a pole-only field a/Q
RealizationResult realize_antipolynomial(const NcTree& target);
bool verify_antipolynomial(const RationalField& f, const NcTree& target);

}  // namespace sphereflow
