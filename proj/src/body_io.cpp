#include "hilbert/body_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "hilbert/errors.hpp"
#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

using nlohmann::json;

Point read_point(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorCode::InvalidBody, "expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

double read_number(const json& j, const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
        if (required) fail(ErrorCode::InvalidBody, std::string("missing field '") + key + "'");
        return fallback;
    }
    if (!j[key].is_number()) fail(ErrorCode::InvalidBody, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<double> read_numbers(const json& j) {
    if (!j.is_array()) fail(ErrorCode::InvalidBody, "expected an array of numbers");
    std::vector<double> out;
    for (const json& x : j) {
        if (!x.is_number()) fail(ErrorCode::InvalidBody, "expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

SupportBody fourier_support(const std::vector<double>& c, const std::vector<double>& s) {
    return SupportBody::from_function([&](double t) {
        double h = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) h += c[k] * std::cos(static_cast<double>(k) * t);
        for (std::size_t k = 0; k < s.size(); ++k) h += s[k] * std::sin(static_cast<double>(k) * t);
        return h;
    });
}

ConvexBody parse(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(ErrorCode::InvalidBody, "body must be an object with a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "polygon") {
        if (!j.contains("vertices") || !j["vertices"].is_array())
            fail(ErrorCode::InvalidBody, "polygon needs 'vertices'");
        std::vector<Point> pts;
        for (const json& v : j["vertices"]) pts.push_back(read_point(v));
        return Polygon(std::move(pts));
    }
    if (kind == "ellipse") {
        const Point c = j.contains("center") ? read_point(j["center"]) : Point{};
        return Ellipse(c, read_number(j, "a", 0.0, true), read_number(j, "b", 0.0, true),
                       read_number(j, "rotation", 0.0, false));
    }
    if (kind == "support") {
        if (j.contains("samples")) return SupportBody(read_numbers(j["samples"]));
        if (j.contains("cos") || j.contains("sin")) {
            const auto c = j.contains("cos") ? read_numbers(j["cos"]) : std::vector<double>{};
            const auto s = j.contains("sin") ? read_numbers(j["sin"]) : std::vector<double>{};
            return fourier_support(c, s);
        }
        fail(ErrorCode::InvalidBody, "support body needs 'samples' or 'cos'/'sin'");
    }
    fail(ErrorCode::InvalidBody, "unknown body kind '" + kind + "'");
}

}  // namespace

ConvexBody body_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::InvalidBody, std::string("malformed JSON: ") + e.what());
    }
    return parse(j);
}

std::string body_to_json(const ConvexBody& body) {
    json j;
    if (const auto* p = body.as_polygon()) {
        j["kind"] = "polygon";
        j["vertices"] = json::array();
        for (const Point& v : p->vertices()) j["vertices"].push_back({v.x, v.y});
    } else if (const auto* e = body.as_ellipse()) {
        j["kind"] = "ellipse";
        j["center"] = {e->center().x, e->center().y};
        j["a"] = e->semi_major();
        j["b"] = e->semi_minor();
        j["rotation"] = e->rotation();
    } else {
        j["kind"] = "support";
        j["samples"] = body.as_support()->samples();
    }
    return j.dump();
}

ConvexBody load_body(const std::string& spec, std::uint64_t seed) {
    if (spec == "disk") return make_disk();
    if (spec == "square") return make_square();
    if (spec == "triangle") return make_standard_triangle();
    if (spec == "ellipse") return Ellipse({0.0, 0.0}, 2.0, 1.0);
    if (spec == "trefoil") return fourier_support({1.0, 0.0, 0.0, 0.1}, {});
    if (spec == "random") {
        Rng rng(seed);
        return random_convex_polygon(rng, 5 + rng.index(4));
    }
    std::ifstream in(spec);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open body file '" + spec + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return body_from_json(buf.str());
}

}  // namespace hilbert
