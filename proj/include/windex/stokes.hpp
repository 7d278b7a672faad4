#pragma once

#include <cstdint>

#include "windex/curve.hpp"
#include "windex/plane_field.hpp"
#include "windex/winding.hpp"

namespace windex {

// Cells of the Unknown band are re-sampled on a kBandRefinement^2 sub-grid.
inline constexpr std::size_t kBandRefinement = 8;

struct Quadrature {
    double value = 0.0;
    // Contribution the raster cannot resolve: unresolved area times
    // max |div V| there times the index jump.
    double bound = 0.0;
    std::size_t unknown_cells = 0;
    std::size_t unresolved_subcells = 0;
};

// Integral of div(V) * Ind over the plane: midpoint rule on the known cells
// of the index map, with band cells refined on a sub-grid.
Quadrature lhs_grid(const Curve& curve, const VectorField& field, const IndexMap& map);
Quadrature lhs_grid(const Curve& curve, const VectorField& field, std::size_t resolution);

// Same integral regrouped by component: sum_i Ind(Omega_i) * int_{Omega_i} div V.
// Band cells are left out and bounded. Throws IndexNotConstant when a
// component carries two indices.
Quadrature lhs_components(const Curve& curve, const VectorField& field, const IndexMap& map);
Quadrature lhs_components(const Curve& curve, const VectorField& field, std::size_t resolution);

// -sum over segments of <V(midpoint), rot90(segment)>.
double rhs_boundary(const Curve& curve, const VectorField& field);

struct Obstruction {
    double area_side = 0.0;
    double area_bound = 0.0;
    double boundary_side = 0.0;
    double tangent_sum = 0.0;
};

Obstruction obstruction_functional(const Curve& curve, const ScalarField& H, Vec2 direction,
                                   std::size_t resolution = 512);

// Boundary side evaluated with the curve's own discrete curvature as H:
// -sum <e, kappa rot90(segment)>. Segments touching a corner take the
// curvature of their smooth end; segments between two corners count as
// straight.
double own_curvature_boundary(const Curve& curve, Vec2 direction);

// tangent_sum alone: <e, sum of delta_t over the singularities>.
double tangent_sum(const Curve& curve, Vec2 direction);

struct EmbeddedReport {
    int interior_index = 0;
    Vec2 boundary;   // integral of H n_out over the curve
    Vec2 area;       // integral of grad H over the enclosed region
    Vec2 bound;      // quadrature bound per component
    bool pass = false;
};

// Classical Stokes check for an embedded curve. Throws NotEmbedded when the
// curve has self-intersections.
EmbeddedReport embedded_specialization_check(const Curve& curve, const ScalarField& H, std::size_t resolution = 512,
                                             double tolerance = 1e-3);

struct HypothesisReport {
    std::size_t samples = 0;
    double positive_fraction = 0.0;   // H > 0
    double monotone_fraction = 0.0;   // <grad H, e> > 0
    bool pass = false;                // both fractions > 0.999
};

// Samples H uniformly on the box [lo, hi].
HypothesisReport sample_hypothesis(const ScalarField& H, Vec2 direction, Vec2 lo, Vec2 hi,
                                   std::size_t samples = 10000, std::uint64_t seed = 1);

}  // namespace windex
