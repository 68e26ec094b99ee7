#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hilbert/convex_body.hpp"

namespace hilbert {

/// Parses a body from JSON text:
///   {"kind": "polygon", "vertices": [[x, y], ...]}
///   {"kind": "ellipse", "center": [x, y], "a": .., "b": .., "rotation": ..}
///   {"kind": "support", "samples": [h0, h1, ...]}          h at 2 pi j / N
///   {"kind": "support", "cos": [c0, c1, ..], "sin": [0, s1, ..]}
/// The last form is h(theta) = sum c_k cos(k theta) + s_k sin(k theta).
/// Throws InvalidBody for malformed input.
ConvexBody body_from_json(std::string_view text);

std::string body_to_json(const ConvexBody& body);

/// Reads a body file, or builds a named body when `spec` is one of: disk,
/// square, triangle (vertices (0,0), (1,0), (0,1)), ellipse (a = 2, b = 1),
/// trefoil (h = 1 + 0.1 cos 3 theta), random (convex polygon with 5 to 8
/// vertices drawn from `seed`).
ConvexBody load_body(const std::string& spec, std::uint64_t seed = 0);

}  // namespace hilbert
