#include "windex/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "windex/error.hpp"

namespace windex {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

Curve::Curve(std::vector<Vec2> vertices, std::vector<std::size_t> corners, OrientationNote note) : note_(note) {
    if (vertices.size() < 3) {
        throw Error(ErrorCode::DegenerateCurve, "a closed curve needs at least 3 vertices, got " +
                                                    std::to_string(vertices.size()));
    }
    BBox raw;
    for (const Vec2& v : vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error(ErrorCode::InvalidInput, "non-finite vertex");
        raw.expand(v);
    }
    const double eps = 1e-9 * raw.diameter();

    std::vector<char> is_corner(vertices.size(), 0);
    for (std::size_t c : corners) {
        if (c >= vertices.size()) throw Error(ErrorCode::InvalidInput, "corner index out of range");
        is_corner[c] = 1;
    }

    std::vector<Vec2> kept;
    std::vector<char> kept_corner;
    kept.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!kept.empty() && distance(kept.back(), vertices[i]) <= eps) {
            kept_corner.back() |= is_corner[i];
            continue;
        }
        kept.push_back(vertices[i]);
        kept_corner.push_back(is_corner[i]);
    }
    while (kept.size() > 1 && distance(kept.back(), kept.front()) <= eps) {
        kept_corner.front() |= kept_corner.back();
        kept.pop_back();
        kept_corner.pop_back();
    }
    if (kept.size() < 3) throw Error(ErrorCode::DegenerateCurve, "fewer than 3 distinct vertices");

    vertices_ = std::move(kept);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (kept_corner[i]) corners_.push_back(i);
    }
    cumulative_.resize(vertices_.size() + 1);
    cumulative_[0] = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        cumulative_[i + 1] = cumulative_[i] + distance(vertices_[i], vertex(i + 1));
        bbox_.expand(vertices_[i]);
    }
    eps_geo_ = 1e-9 * bbox_.diameter();
    if (length() <= eps_geo_) throw Error(ErrorCode::DegenerateCurve, "curve has zero length");
}

bool Curve::is_corner_vertex(std::size_t i) const {
    return std::binary_search(corners_.begin(), corners_.end(), i % size());
}

double Curve::segment_length(std::size_t i) const {
    i %= size();
    return cumulative_[i + 1] - cumulative_[i];
}

Vec2 Curve::segment_direction(std::size_t i) const { return normalized(segment_end(i) - segment_start(i)); }

double Curve::wrap(double s) const {
    const double L = length();
    double r = std::fmod(s, L);
    if (r < 0.0) r += L;
    if (r >= L) r = 0.0;
    return r;
}

double Curve::param_distance(double a, double b) const {
    const double d = std::fabs(wrap(a) - wrap(b));
    return std::min(d, length() - d);
}

std::size_t Curve::segment_at(double s, double* fraction) const {
    s = wrap(s);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, s);
    std::size_t seg = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    seg = std::min(seg, size() - 1);
    if (fraction) {
        const double len = segment_length(seg);
        *fraction = len > 0.0 ? std::clamp((s - cumulative_[seg]) / len, 0.0, 1.0) : 0.0;
    }
    return seg;
}

Vec2 Curve::point_at(double s) const {
    double f = 0.0;
    const std::size_t seg = segment_at(s, &f);
    const Vec2 a = segment_start(seg), b = segment_end(seg);
    return a + (b - a) * f;
}

bool Curve::near_corner(double s) const {
    for (std::size_t c : corners_) {
        if (param_distance(s, param_of_vertex(c)) <= eps_param()) return true;
    }
    return false;
}

Curve Curve::reversed() const {
    const std::size_t n = size();
    std::vector<Vec2> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = vertices_[(n - i) % n];
    std::vector<std::size_t> c;
    for (std::size_t k : corners_) c.push_back((n - k) % n);
    std::sort(c.begin(), c.end());
    return Curve(std::move(v), std::move(c));
}

Curve Curve::rebased(std::size_t start) const {
    const std::size_t n = size();
    start %= n;
    std::vector<Vec2> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = vertices_[(start + i) % n];
    std::vector<std::size_t> c;
    for (std::size_t k : corners_) c.push_back((k + n - start) % n);
    std::sort(c.begin(), c.end());
    return Curve(std::move(v), std::move(c), note_);
}

Curve Curve::scaled_about(Vec2 center, double factor) const {
    std::vector<Vec2> v(vertices_);
    for (Vec2& p : v) p = center + (p - center) * factor;
    return Curve(std::move(v), corners_, note_);
}

Curve Curve::rotated(double angle) const {
    std::vector<Vec2> v(vertices_);
    for (Vec2& p : v) p = windex::rotated(p, angle);
    return Curve(std::move(v), corners_, note_);
}

Curve Curve::with_note(OrientationNote note) const { return Curve(vertices_, corners_, note); }

bool is_well_oriented(const Singularity& s, Vec2 e) { return dot(s.t_minus, e) > 0.0 && dot(s.t_plus, e) < 0.0; }

Curve resample_arclength(const Curve& curve, std::size_t n_samples) {
    if (n_samples < 3) throw Error(ErrorCode::DegenerateCurve, "need at least 3 samples");
    if (curve.length() <= curve.eps_geo()) throw Error(ErrorCode::DegenerateCurve, "curve has zero length");
    const double L = curve.length();
    const double h = L / static_cast<double>(n_samples);
    std::vector<Vec2> v(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) v[k] = curve.point_at(static_cast<double>(k) * h);
    std::vector<std::size_t> corners;
    for (std::size_t c : curve.corners()) {
        const auto idx = static_cast<std::size_t>(std::llround(curve.param_of_vertex(c) / h)) % n_samples;
        corners.push_back(idx);
    }
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
    return Curve(std::move(v), std::move(corners), curve.orientation_note());
}

FrameSample frame_at(const Curve& curve, double param) {
    if (curve.near_corner(param)) {
        throw Error(ErrorCode::AtCorner, "frame requested at a corner parameter");
    }
    double f = 0.0;
    const std::size_t seg = curve.segment_at(param, &f);
    FrameSample out;
    out.param = curve.wrap(param);
    out.point = curve.point_at(param);
    out.tangent = curve.segment_direction(seg);
    out.normal = rot90(out.tangent);
    return out;
}

double vertex_curvature(const Curve& curve, std::size_t i) {
    const std::size_t n = curve.size();
    i %= n;
    if (curve.is_corner_vertex(i)) throw Error(ErrorCode::AtCorner, "curvature requested at a corner vertex");
    const Vec2 a = curve.vertex(i + n - 1), b = curve.vertex(i), c = curve.vertex(i + 1);
    const double denom = distance(a, b) * distance(b, c) * distance(a, c);
    if (denom == 0.0) return 0.0;
    return 2.0 * cross(b - a, c - b) / denom;
}

double discrete_curvature(const Curve& curve, double param) {
    if (curve.near_corner(param)) throw Error(ErrorCode::AtCorner, "curvature requested at a corner parameter");
    double f = 0.0;
    const std::size_t seg = curve.segment_at(param, &f);
    const std::size_t i0 = seg, i1 = (seg + 1) % curve.size();
    const bool c0 = curve.is_corner_vertex(i0), c1 = curve.is_corner_vertex(i1);
    if (c0 && c1) throw Error(ErrorCode::AtCorner, "segment joins two corners");
    if (c0) return vertex_curvature(curve, i1);
    if (c1) return vertex_curvature(curve, i0);
    return (1.0 - f) * vertex_curvature(curve, i0) + f * vertex_curvature(curve, i1);
}

std::vector<Singularity> singularities_of(const Curve& curve) {
    std::vector<Singularity> out;
    const std::size_t n = curve.size();
    for (std::size_t c : curve.corners()) {
        Singularity s;
        s.param = curve.param_of_vertex(c);
        s.point = curve.vertex(c);
        s.t_minus = curve.segment_direction(c + n - 1);
        s.t_plus = curve.segment_direction(c);
        s.delta_t = s.t_minus - s.t_plus;
        if (norm(s.delta_t) > kEpsTan) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const Singularity& a, const Singularity& b) { return a.param < b.param; });
    return out;
}

namespace {

double signed_turn(Vec2 d0, Vec2 d1) { return std::atan2(cross(d0, d1), dot(d0, d1)); }

std::vector<double> turning_of(std::span<const Vec2> v) {
    const std::size_t n = v.size();
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 d0 = v[i] - v[(i + n - 1) % n];
        const Vec2 d1 = v[(i + 1) % n] - v[i];
        phi[i] = signed_turn(d0, d1);
    }
    return phi;
}

}  // namespace

std::vector<std::size_t> detect_corners(std::span<const Vec2> vertices, double threshold) {
    const std::size_t n = vertices.size();
    std::vector<std::size_t> out;
    if (n < 3) return out;
    const std::vector<double> phi = turning_of(vertices);
    constexpr double kSharp = std::numbers::pi / 8.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(phi[i]);
        const double neighbours = 0.5 * (std::fabs(phi[(i + n - 1) % n]) + std::fabs(phi[(i + 1) % n]));
        if (a > kSharp || a - neighbours > threshold) out.push_back(i);
    }
    return out;
}

std::vector<double> turning_angles(const Curve& curve) { return turning_of(curve.vertices()); }

double total_curvature(const Curve& curve) {
    const std::vector<double> turn = turning_angles(curve);
    double sum = 0.0;
    for (std::size_t i = 0; i < turn.size(); ++i) {
        if (!curve.is_corner_vertex(i)) sum += turn[i];
    }
    return sum;
}

bool positively_curved(const Curve& curve) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.is_corner_vertex(i)) continue;
        if (!(vertex_curvature(curve, i) > 0.0)) return false;
    }
    return true;
}

Curve orient_positive(const Curve& curve) {
    Curve oriented = mean_signed_curvature(curve) < 0.0 ? curve.reversed() : curve;
    const auto note = positively_curved(oriented) ? OrientationNote::PositivelyCurved
                                                  : OrientationNote::NotPositivelyCurved;
    return oriented.with_note(note);
}

double signed_area(const Curve& curve) {
    double a = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) a += cross(curve.vertex(i), curve.vertex(i + 1));
    return 0.5 * a;
}

}  // namespace windex
