#pragma once

#include "sphereflow/portrait.hpp"

#include <string>

namespace sphereflow {

struct SvgOptions {
    int size = 640;       // pixel edge of the square canvas
    double span = 0.0;    // half width of the window; 0 picks one from the scene
    bool labels = true;
    bool view_z = false;  // draw the chart around infinity instead
};

std::string render_svg(const RationalField& f, const Analysis& an, const SvgOptions& opt = {});

}  // namespace sphereflow
