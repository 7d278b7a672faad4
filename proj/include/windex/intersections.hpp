#pragma once

#include <variant>
#include <vector>

#include "windex/curve.hpp"

namespace windex {

struct IntersectionRecord {
    Vec2 point;
    std::vector<double> params;  // sorted arc-length parameters mapping to point
    int order = 0;               // params.size()
    bool tangential = false;     // some pair of branches parallel within kEpsAng
};

// A touching or crossing pair of non-adjacent segments.
struct SegmentHit {
    std::size_t seg_a = 0;
    std::size_t seg_b = 0;
    double t_a = 0.0;  // fraction along seg_a
    double t_b = 0.0;  // fraction along seg_b
    Vec2 point;
};

// Below this many segments self_intersections() tests all pairs.
inline constexpr std::size_t kSweepThreshold = 256;

// Every hit between non-adjacent segments, by testing all pairs. O(n^2).
std::vector<SegmentHit> all_pairs_hits(const Curve& curve);

// Same hits found by a Bentley-Ottmann sweep, O((n + k) log n).
std::vector<SegmentHit> sweep_hits(const Curve& curve);

// Self-intersection points of the curve, clustered within 4 eps_geo and sorted
// lexicographically. Throws OverlapDetected for collinear overlap of two
// non-adjacent segments longer than eps_geo.
std::vector<IntersectionRecord> self_intersections(const Curve& curve);

// Builds records from raw hits (exposed so both detectors share it).
std::vector<IntersectionRecord> cluster_hits(const Curve& curve, const std::vector<SegmentHit>& hits);

struct Regular {};
struct SelfIntersectionPoint {
    IntersectionRecord record;
};
struct CornerPoint {
    Singularity singularity;
};
using PointClass = std::variant<Regular, SelfIntersectionPoint, CornerPoint>;

PointClass classify_point(const Curve& curve, double param);
PointClass classify_point(const Curve& curve, double param, const std::vector<IntersectionRecord>& records);

// Tangent of the branch through `param`: the chord through the neighbouring
// vertices when param sits on a vertex, the segment direction otherwise.
Vec2 branch_tangent(const Curve& curve, double param);

// For a tangential record: true iff the touching branches are anti-parallel
// within kEpsAng. Throws NotTangential for a transversal record.
bool tangential_orientation_check(const IntersectionRecord& record, const Curve& curve);

}  // namespace windex
