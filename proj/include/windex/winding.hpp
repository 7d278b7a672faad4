#pragma once

#include <climits>
#include <cstdint>
#include <vector>

#include "windex/curve.hpp"

namespace windex {

// Winding number by signed crossings of a ray from `point`. Rays passing
// within eps_geo of a vertex are re-drawn from a fixed angle sequence.
// Throws OnCurve when the point is within eps_geo of the curve.
int winding_number(const Curve& curve, Vec2 point);

// Same quantity by accumulating the angle subtended by every segment.
int winding_number_by_angle(const Curve& curve, Vec2 point);

double distance_to_curve(const Curve& curve, Vec2 point);

// Horizontal scanlines at y = y0 + (r + 0.5) dy. Each row keeps the sorted
// crossings of the curve so that the winding number of any point on the row
// is a suffix sum (half-open rule, ray towards +x).
class ScanlineWinding {
public:
    ScanlineWinding(const Curve& curve, double y0, double dy, std::size_t rows);

    double row_y(std::size_t r) const { return y0_ + (static_cast<double>(r) + 0.5) * dy_; }
    int at(std::size_t r, double x) const;

    // Fills out[k] with the winding number at x0 + (k + 0.5) dx, k < count.
    void fill_row(std::size_t r, double x0, double dx, std::size_t count, int* out) const;

private:
    double y0_, dy_;
    std::vector<std::size_t> offset_;
    std::vector<double> xs_;      // crossing abscissas, sorted per row
    std::vector<int> suffix_;     // suffix sums of crossing signs per row
};

struct IndexMap {
    static constexpr int kUnknown = INT_MIN;

    Vec2 origin;       // lower-left corner of cell (0, 0)
    double cell = 0.0; // square cells
    std::size_t nx = 0, ny = 0;
    std::vector<int> index;                 // row-major, kUnknown near the curve
    std::vector<int> component;             // -1 for Unknown cells
    std::vector<int> component_index;       // index of each component (first cell seen)
    std::vector<std::size_t> component_cells;
    int unbounded = -1;
    bool index_constant = true;             // every component carries a single index

    std::size_t id(std::size_t i, std::size_t j) const { return j * nx + i; }
    Vec2 center(std::size_t i, std::size_t j) const {
        return origin + Vec2{(static_cast<double>(i) + 0.5) * cell, (static_cast<double>(j) + 0.5) * cell};
    }
    std::size_t component_count() const { return component_index.size(); }
    int min_index() const;
    int max_index() const;
};

// Raster of winding numbers over the bounding box inflated by `padding` times
// its larger side on every edge. The larger side gets `resolution` cells.
// Cells whose centre is within half a cell diagonal of the curve are Unknown;
// the rest are labelled into 4-connected components.
IndexMap index_map(const Curve& curve, std::size_t resolution, double padding = 0.2);

struct IndexJumpFailure {
    double param = 0.0;
    Vec2 point;
    int inside = 0;   // index on the normal side
    int outside = 0;  // index on the other side
};

struct IndexJumpReport {
    std::size_t trials = 0;
    std::size_t passed = 0;
    // Probe pairs that straddle another branch of the curve as well; the
    // index difference there says nothing about the local jump.
    std::size_t band = 0;
    std::vector<IndexJumpFailure> failures;      // genuine violations
    std::vector<IndexJumpFailure> band_probes;
    std::size_t skipped_nonregular = 0;
};

// Probes Ind(p + d n) - Ind(p - d n) at random regular points p, d a quarter
// sample spacing. Throws NoRegularPoint when no regular point can be drawn.
IndexJumpReport verify_index_jump(const Curve& curve, std::size_t trials, std::uint64_t seed = 1);

}  // namespace windex
