#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hilbert::cli {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 24.0;
constexpr double kLegendLine = 16.0;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const ConvexBody& body, const std::vector<SvgLayer>& layers) {
    const std::vector<Point> outline = sample_boundary(body, body.is_polygon() ? 4 : 720);
    std::vector<Point> all = outline;
    for (const SvgLayer& l : layers) all.insert(all.end(), l.points.begin(), l.points.end());
    double x0 = all[0].x, x1 = all[0].x, y0 = all[0].y, y1 = all[0].y;
    for (const Point& p : all) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double scale = (kSize - 2.0 * kMargin) / span;
    const double legend_height = kLegendLine * static_cast<double>(layers.size() + 1) + 8.0;
    const double height = kSize + legend_height;
    const auto sx = [&](double x) { return num(kMargin + (x - x0) * scale); };
    const auto sy = [&](double y) { return num(legend_height + kMargin + (y1 - y) * scale); };
    const auto polyline = [&](const std::vector<Point>& pts) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ' ';
            s += sx(pts[i].x) + "," + sy(pts[i].y);
        }
        return s;
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kSize) << " " << num(height) << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<polygon points=\"" << polyline(outline)
      << "\" fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    for (const SvgLayer& l : layers) {
        if (l.closed && l.points.size() >= 2) {
            o << "<polygon points=\"" << polyline(l.points) << "\" fill=\"none\" stroke=\"" << l.color
              << "\" stroke-width=\"1.2\"/>\n";
        } else {
            for (const Point& p : l.points)
                o << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << l.color
                  << "\"/>\n";
        }
    }
    o << "<text x=\"8\" y=\"" << num(kLegendLine) << "\" font-family=\"sans-serif\" font-size=\"12\">"
      << "body</text>\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const double y = kLegendLine * static_cast<double>(i + 2);
        o << "<rect x=\"8\" y=\"" << num(y - 9.0) << "\" width=\"10\" height=\"10\" fill=\"" << layers[i].color
          << "\"/>\n";
        o << "<text x=\"24\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"12\">"
          << escape(layers[i].label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace hilbert::cli
