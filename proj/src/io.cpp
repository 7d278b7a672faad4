#include "windex/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "windex/error.hpp"

namespace windex {

namespace {

using nlohmann::json;

std::string g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string shortest(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::string curve_to_json(const Curve& curve, int indent) {
    json j;
    j["vertices"] = json::array();
    for (const Vec2& v : curve.vertices()) j["vertices"].push_back({v.x, v.y});
    j["closed"] = true;
    j["corners"] = curve.corners();
    return j.dump(indent) + "\n";
}

Curve curve_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("curve JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
        throw Error(ErrorCode::InvalidInput, "curve JSON needs a \"vertices\" array");
    }
    if (j.contains("closed") && !j["closed"].get<bool>()) {
        throw Error(ErrorCode::InvalidInput, "only closed curves are supported");
    }
    std::vector<Vec2> pts;
    pts.reserve(j["vertices"].size());
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw Error(ErrorCode::InvalidInput, "every vertex must be a pair of numbers");
        }
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    std::vector<std::size_t> corners;
    if (j.contains("corners")) {
        for (const auto& c : j["corners"]) {
            if (!c.is_number_unsigned() || c.get<std::size_t>() >= pts.size()) {
                throw Error(ErrorCode::InvalidInput, "corner indices must address vertices");
            }
            corners.push_back(c.get<std::size_t>());
        }
    } else {
        corners = detect_corners(pts);
    }
    return Curve(std::move(pts), std::move(corners));
}

Curve curve_from_csv(std::string_view text) {
    std::vector<Vec2> pts;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        Vec2 p;
        if (comma == std::string_view::npos || !parse_number(line.substr(0, comma), p.x) ||
            !parse_number(line.substr(comma + 1), p.y)) {
            if (pts.empty() && line_no == 1) continue;  // header
            throw Error(ErrorCode::InvalidInput, "CSV line " + std::to_string(line_no) + " is not \"x,y\"");
        }
        pts.push_back(p);
    }
    auto corners = detect_corners(pts);
    return Curve(std::move(pts), std::move(corners));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Curve load_curve(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    return path.extension() == ".csv" ? curve_from_csv(text) : curve_from_json(text);
}

void save_curve(const Curve& curve, const std::filesystem::path& path) { write_text(path, curve_to_json(curve)); }

std::string index_map_csv(const IndexMap& map) {
    std::string out = "x,y,index\n";
    for (std::size_t j = 0; j < map.ny; ++j) {
        for (std::size_t i = 0; i < map.nx; ++i) {
            const Vec2 c = map.center(i, j);
            const int v = map.index[map.id(i, j)];
            out += shortest(c.x) + "," + shortest(c.y) + ",";
            if (v != IndexMap::kUnknown) out += std::to_string(v);
            out += "\n";
        }
    }
    return out;
}

std::string index_color(int index, int max_abs) {
    if (index == IndexMap::kUnknown) return "#bbbbbb";
    const double t = max_abs > 0 ? std::min(1.0, std::abs(index) / static_cast<double>(max_abs)) : 0.0;
    // Blend from white towards the end colour of the matching side.
    const double end[2][3] = {{33, 102, 172}, {178, 24, 43}};
    const auto& e = end[index > 0 ? 1 : 0];
    char buf[8];
    const auto mix = [&](int k) { return static_cast<int>(std::lround(255.0 + (e[k] - 255.0) * (0.25 + 0.75 * t))); };
    if (index == 0) return "#ffffff";
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0), mix(1), mix(2));
    return buf;
}

std::string render_svg(const std::vector<SvgLayer>& layers, const SvgOptions& options) {
    BBox box;
    for (const auto& l : layers) {
        if (!l.curve) continue;
        box.expand(l.curve->bbox().lo);
        box.expand(l.curve->bbox().hi);
    }
    if (options.map) {
        const auto& m = *options.map;
        box.expand(m.origin);
        box.expand(m.origin + Vec2{m.cell * static_cast<double>(m.nx), m.cell * static_cast<double>(m.ny)});
    }
    if (!(box.width() >= 0.0)) throw Error(ErrorCode::InvalidInput, "nothing to render");
    const double side = std::max({box.width(), box.height(), 1e-12});
    const double scale = options.pixels / side;
    const double w = box.width() * scale, h = box.height() * scale;
    const auto X = [&](double x) { return g9((x - box.lo.x) * scale); };
    const auto Y = [&](double y) { return g9((box.hi.y - y) * scale); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + g9(w) + "\" height=\"" + g9(h) + "\" viewBox=\"0 0 " +
           g9(w) + " " + g9(h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    if (options.map) {
        const auto& m = *options.map;
        const int max_abs = std::max(std::abs(m.min_index()), std::abs(m.max_index()));
        out += "<g shape-rendering=\"crispEdges\">\n";
        for (std::size_t j = 0; j < m.ny; ++j) {
            std::size_t i = 0;
            while (i < m.nx) {
                const int v = m.index[m.id(i, j)];
                std::size_t k = i + 1;
                while (k < m.nx && m.index[m.id(k, j)] == v) ++k;
                if (v != 0) {
                    const double x0 = m.origin.x + m.cell * static_cast<double>(i);
                    const double y1 = m.origin.y + m.cell * static_cast<double>(j + 1);
                    out += "<rect x=\"" + X(x0) + "\" y=\"" + Y(y1) + "\" width=\"" +
                           g9(m.cell * static_cast<double>(k - i) * scale) + "\" height=\"" + g9(m.cell * scale) +
                           "\" fill=\"" + index_color(v, max_abs) + "\"/>\n";
                }
                i = k;
            }
        }
        out += "</g>\n";
    }

    const double stroke = std::max(1.0, options.pixels / 600.0);
    for (const auto& l : layers) {
        if (!l.curve) continue;
        const Curve& c = *l.curve;
        out += "<path fill=\"none\" stroke=\"" + l.color + "\" stroke-width=\"" + g9(stroke * l.width) +
               "\" stroke-linejoin=\"round\"";
        if (l.opacity < 1.0) out += " stroke-opacity=\"" + g9(l.opacity) + "\"";
        out += " d=\"";
        for (std::size_t i = 0; i < c.size(); ++i) {
            out += (i == 0 ? "M" : " L") + X(c.vertex(i).x) + " " + Y(c.vertex(i).y);
        }
        out += " Z\"/>\n";
        if (options.mark_corners) {
            for (std::size_t k : c.corners()) {
                out += "<circle cx=\"" + X(c.vertex(k).x) + "\" cy=\"" + Y(c.vertex(k).y) + "\" r=\"" +
                       g9(3.0 * stroke * l.width) + "\" fill=\"" + l.color + "\"/>\n";
            }
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace windex
