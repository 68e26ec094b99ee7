#pragma once

#include <string>
#include <vector>

#include "hilbert/convex_body.hpp"

namespace hilbert::cli {

struct SvgLayer {
    std::string label;
    std::string color;
    std::vector<Point> points;
    bool closed{true};    // polygon outline; false draws markers only
};

/// Standalone SVG of the body outline with overlays and a legend. Output
/// depends only on the input (fixed number formatting, no timestamps).
std::string render_svg(const ConvexBody& body, const std::vector<SvgLayer>& layers);

}  // namespace hilbert::cli
