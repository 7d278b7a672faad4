#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "windex/vec2.hpp"

namespace windex {

// Shared tolerances. eps_geo and eps_param are per curve (see Curve).
inline constexpr double kEpsTan = 1e-6;      // minimum |t- - t+| for a singularity
inline constexpr double kEpsAng = 1e-3;      // radians, tangency classification
inline constexpr double kCornerAngle = 1e-3; // radians, corner detection on imported polylines
inline constexpr std::size_t kDefaultSamples = 2048;

enum class OrientationNote { Unchecked, PositivelyCurved, NotPositivelyCurved };

// Closed polyline with tagged corner vertices. Parameters are arc lengths in
// [0, length()); vertex i sits at param_of_vertex(i) and segment i joins
// vertex i to vertex i+1 (mod size()).
class Curve {
public:
    // Consecutive vertices closer than eps_geo are merged (a merged corner tag
    // survives on the kept vertex); a trailing copy of the first vertex is
    // dropped. Throws DegenerateCurve when fewer than 3 distinct vertices or
    // zero length remain.
    explicit Curve(std::vector<Vec2> vertices, std::vector<std::size_t> corners = {},
                   OrientationNote note = OrientationNote::Unchecked);

    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    const std::vector<std::size_t>& corners() const noexcept { return corners_; }
    bool is_corner_vertex(std::size_t i) const;
    OrientationNote orientation_note() const noexcept { return note_; }

    double length() const noexcept { return cumulative_.back(); }
    double param_of_vertex(std::size_t i) const { return cumulative_[i % vertices_.size()]; }
    double segment_length(std::size_t i) const;
    Vec2 segment_start(std::size_t i) const { return vertex(i); }
    Vec2 segment_end(std::size_t i) const { return vertex(i + 1); }
    Vec2 segment_direction(std::size_t i) const;

    double wrap(double s) const;
    // Shortest distance between two parameters on the circle of length L.
    double param_distance(double a, double b) const;
    // Segment containing s and the fraction of the way along it.
    std::size_t segment_at(double s, double* fraction = nullptr) const;
    Vec2 point_at(double s) const;

    const BBox& bbox() const noexcept { return bbox_; }
    double eps_geo() const noexcept { return eps_geo_; }
    double spacing() const noexcept { return length() / static_cast<double>(size()); }
    double eps_param() const noexcept { return 0.5 * spacing(); }

    bool near_corner(double s) const;

    Curve reversed() const;
    // Rotate the vertex numbering so that vertex `start` becomes vertex 0.
    Curve rebased(std::size_t start) const;
    Curve scaled_about(Vec2 center, double factor) const;
    Curve rotated(double angle) const;
    Curve with_note(OrientationNote note) const;

private:
    std::vector<Vec2> vertices_;
    std::vector<std::size_t> corners_;
    std::vector<double> cumulative_;
    BBox bbox_;
    double eps_geo_ = 0.0;
    OrientationNote note_ = OrientationNote::Unchecked;
};

struct FrameSample {
    Vec2 point;
    Vec2 tangent;
    Vec2 normal;
    double param = 0.0;
};

// A C1 break: delta_t = t_minus - t_plus.
struct Singularity {
    double param = 0.0;
    Vec2 point;
    Vec2 t_minus;
    Vec2 t_plus;
    Vec2 delta_t;
};

// Incoming tangent has positive and outgoing tangent negative component along e.
bool is_well_oriented(const Singularity& s, Vec2 e);

Curve resample_arclength(const Curve& curve, std::size_t n_samples);

FrameSample frame_at(const Curve& curve, double param);

// Signed curvature from the circumscribed circle of three consecutive
// vertices. Positive when the curve turns towards rot90(tangent).
double vertex_curvature(const Curve& curve, std::size_t i);
double discrete_curvature(const Curve& curve, double param);

std::vector<Singularity> singularities_of(const Curve& curve);

// Fallback corner detection for polylines imported without corner tags.
std::vector<std::size_t> detect_corners(std::span<const Vec2> vertices, double threshold = kCornerAngle);

// Signed exterior angle at every vertex.
std::vector<double> turning_angles(const Curve& curve);

// Sum of the turning angles at non-corner vertices; 2 pi times the turning
// number for a curve without corners.
double total_curvature(const Curve& curve);
inline double mean_signed_curvature(const Curve& curve) { return total_curvature(curve) / curve.length(); }

// True when every non-corner vertex has strictly positive curvature.
bool positively_curved(const Curve& curve);

// Reverse if needed so the mean signed curvature is positive; records the
// positivity check in the orientation note.
Curve orient_positive(const Curve& curve);

// Shoelace area, positive for a counterclockwise simple polygon.
double signed_area(const Curve& curve);

}  // namespace windex
