#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "windex/field_expr.hpp"
#include "windex/vec2.hpp"

namespace windex {

// Scalar field on the plane. `grad` may be empty, in which case gradient()
// falls back to central differences.
struct ScalarField {
    std::string provenance;
    std::function<double(Vec2)> eval;
    std::function<Vec2(Vec2)> grad;

    double operator()(Vec2 p) const { return eval(p); }
    Vec2 gradient(Vec2 p, double h) const;
};

struct VectorField {
    std::string provenance;
    std::function<Vec2(Vec2)> eval;
    std::function<double(Vec2)> div;

    Vec2 operator()(Vec2 p) const { return eval(p); }
    double divergence(Vec2 p, double h) const;
};

// Expressions matching a catalog entry (whitespace ignored) get an analytic
// derivative; anything else is parsed and differentiated numerically.
ScalarField scalar_field(std::string_view text);
VectorField vector_field(std::string_view text);

ScalarField constant_scalar(double c);
VectorField constant_vector(Vec2 c);

// V = H e, with div V = <grad H, e>.
VectorField scaled_direction(const ScalarField& H, Vec2 e, double h);

// Parses "a,b" into a vector (used for --dir).
Vec2 parse_direction(std::string_view text);

}  // namespace windex
