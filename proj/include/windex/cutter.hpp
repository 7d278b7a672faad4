#pragma once

#include <optional>
#include <vector>

#include "windex/curve.hpp"
#include "windex/intersections.hpp"
#include "windex/winding.hpp"

namespace windex {

inline constexpr std::size_t kCutterResolution = 512;

// Faces of the plane cut by the curve: 2 + sum over crossings of (order - 1).
std::size_t topological_components(const std::vector<IntersectionRecord>& records);

struct NegativeRegion {
    IndexMap map;
    std::vector<int> components;  // ids in map with negative index
};

// Throws UnboundedNegative if the unbounded component is negative.
NegativeRegion negative_region(const Curve& curve, std::size_t resolution = kCutterResolution);

struct LeftExtremity {
    Vec2 point;
    bool tie = false;  // another candidate within 4 eps_geo in x; min y kept
    Vec2 tied_with;
};

// Leftmost point of the closure of the negative region. Curve vertices and
// crossing points near negative cells are tested with a ring of probes for a
// negative neighbour; candidates close to a crossing snap onto it.
LeftExtremity left_extremity(const Curve& curve, const std::vector<int>& region, const IndexMap& map,
                             const std::vector<IntersectionRecord>& records);

// Snap radius used to identify x with a crossing: max(4 eps_geo, 2 spacing).
double snap_radius(const Curve& curve);

// The crossing at x. Throws RegularLeftmost if x is a regular point and
// BadSingularity if x is a corner that is not a crossing.
IntersectionRecord assert_self_intersection(const Curve& curve, Vec2 x, const std::vector<IntersectionRecord>& records);

struct ArcEnd {
    double angle = 0.0;     // direction from x at the probe radius
    bool incoming = false;  // the curve travels towards x along this end
    std::size_t branch = 0; // index into record.params
};

struct Sector {
    Vec2 x;
    double radius = 0.0;
    double probe_radius = 0.0;
    std::vector<ArcEnd> ends;         // sorted by angle
    std::vector<int> indices;         // index of the sector after ends[k]
    std::size_t chosen = 0;           // sector between ends[chosen] and ends[chosen + 1]
    int least_index = 0;
    double s1 = 0.0;                  // param where the incoming bound reaches x
    double s2 = 0.0;                  // param where the outgoing bound leaves x
};

// Sector of least index around a crossing. The disk radius starts at 8 sample
// spacings and is halved (floor 2 spacings) until it holds exactly the
// record's branches and no other crossing. Throws BadSector when the bounds
// do not run incoming-then-outgoing or one of them is a corner, and
// ProbeFailed when no radius works within 8 attempts.
Sector least_index_sector(const Curve& curve, const IntersectionRecord& record,
                          const std::vector<IntersectionRecord>& records);

struct CutTrace {
    std::size_t iteration = 0;
    std::vector<int> omega_components;
    std::vector<int> omega_indices;
    Vec2 chosen_point;
    bool tie = false;
    double s1 = 0.0, s2 = 0.0;
    Vec2 sector_in, sector_out;  // directions of the two bounding arc-ends
    int sector_index = 0;
    Singularity new_singularity;  // pre-rescale
    std::size_t components_before = 0;
    std::size_t components_after = 0;
    double scale = 1.0;           // applied about chosen_point after the cut
    std::size_t vertices_before = 0, vertices_after = 0;
};

// Keeps gamma(]s1, s2]) with a fresh corner at x, rescaled to length 2 pi.
// Throws IllOrientedCut if the new corner is not well-oriented for e.
Curve cut(const Curve& curve, const IntersectionRecord& record, const Sector& sector, Vec2 e, CutTrace& trace);

struct RunOptions {
    Vec2 direction{1.0, 0.0};
    std::size_t resolution = kCutterResolution;
    std::optional<std::size_t> max_iter;  // defaults to the initial component count
};

struct RunResult {
    Curve final_curve;
    std::vector<Curve> steps;  // curve after each cut, in the caller's frame
    std::vector<CutTrace> traces;
    std::size_t initial_components = 0;
    bool positively_curved = false;  // hypothesis of the theorem, recorded
    double tangent_sum = 0.0;
    double own_boundary = 0.0;       // boundary side with the curve's own curvature
    bool certificate = false;        // tangent_sum > 0 and own_boundary < 0
    std::size_t singularities = 0;
};

// Cuts until no negative component is left. Works in a frame where the
// direction is (1, 0); results are rotated back.
RunResult run(const Curve& curve, const RunOptions& options = {});

}  // namespace windex
