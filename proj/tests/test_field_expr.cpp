#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "expr_oracle.hpp"
#include "windex/error.hpp"
#include "windex/field_expr.hpp"
#include "windex/plane_field.hpp"
#include "windex/prescribed_ode.hpp"

using namespace windex;
using expr::FieldExpr;

TEST_CASE("scalar evaluation") {
    CHECK(FieldExpr::parse("1 + x/10").eval_scalar({2, 0}) == doctest::Approx(1.2));
    CHECK(FieldExpr::parse("x^2 + y^2").eval_scalar({3, 4}) == 25.0);
    CHECK(std::fabs(FieldExpr::parse("exp(x)").eval_scalar({1, 0}) - std::numbers::e) <= 1e-15);
    CHECK(FieldExpr::parse("min(x, y) + max(x, y)").eval_scalar({1, 5}) == 6.0);
}

TEST_CASE("lemniscate curvature as an expression") {
    const FieldExpr c = FieldExpr::parse("sign(x) * 3 * sqrt((sqrt(8*x^2+1) - 1)/2)");
    CHECK(c.eval_scalar({1, 0.3}) == doctest::Approx(3.0).epsilon(1e-15));
    for (double x = -1.0; x <= 1.0; x += 0.0625) {
        CHECK(c.eval_scalar({x, 0}) == doctest::Approx(lemniscate_curvature(1.0, x)).epsilon(1e-14));
    }
}

TEST_CASE("vector fields") {
    const FieldExpr v = FieldExpr::parse("x, 0");
    CHECK(v.arity() == 2);
    const Vec2 r = v.eval_vector({3, 4});
    CHECK(r.x == 3.0);
    CHECK(r.y == 0.0);
    const VectorField f = vector_field("x , 0");
    const VectorField g = vector_field("x*1, 0");  // not in the catalog: finite differences
    for (double t = -2; t <= 2; t += 0.5) {
        CHECK(f.divergence({t, 1 - t}, 1e-6) == 1.0);
        CHECK(g.divergence({t, 1 - t}, 1e-6) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("precedence and associativity") {
    CHECK(FieldExpr::parse("-x^2").eval_scalar({3, 0}) == -9.0);
    CHECK(FieldExpr::parse("2^3^2").eval_scalar({0, 0}) == 512.0);
    CHECK(FieldExpr::parse("2^-1").eval_scalar({0, 0}) == 0.5);
    CHECK(FieldExpr::parse("8/4/2").eval_scalar({0, 0}) == 1.0);
    CHECK(FieldExpr::parse("1-2-3").eval_scalar({0, 0}) == -4.0);
    CHECK(FieldExpr::parse("-2*3+1").eval_scalar({0, 0}) == -5.0);
    CHECK(FieldExpr::parse("--x").eval_scalar({4, 0}) == 4.0);
}

TEST_CASE("domain errors carry the offending span") {
    const FieldExpr e = FieldExpr::parse("1 + sqrt(x)");
    try {
        e.eval_scalar({-1, 0});
        FAIL("expected DomainError");
    } catch (const DomainError& d) {
        CHECK(d.code() == ErrorCode::DomainError);
        CHECK(d.span_begin() == 4);
        CHECK(d.span_end() == 11);
    }
    CHECK_THROWS_AS(FieldExpr::parse("1/x").eval_scalar({0, 0}), DomainError);
    CHECK_THROWS_AS(FieldExpr::parse("exp(x)").eval_scalar({1000, 0}), DomainError);
    CHECK_NOTHROW(FieldExpr::parse("sqrt(x)").eval_scalar({0, 0}));
}

TEST_CASE("syntax errors report offset and expectations") {
    auto offset_of = [](const char* text) -> std::ptrdiff_t {
        try {
            FieldExpr::parse(text);
        } catch (const SyntaxError& e) {
            CHECK_FALSE(e.expected().empty());
            return static_cast<std::ptrdiff_t>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("1 +") == 3);
    CHECK(offset_of("(x") == 2);
    CHECK(offset_of("foo(x)") == 0);
    CHECK(offset_of("x y") == 2);
    CHECK(offset_of("min(x)") == 5);
    CHECK(offset_of("1e") == 2);
    CHECK(offset_of("x, y, 1") == 4);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("1e999") == 0);
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK(FieldExpr::parse("(1+x)*y").to_string() == "(1 + x) * y");
    CHECK(FieldExpr::parse("1+(x*y)").to_string() == "1 + x * y");
    CHECK(FieldExpr::parse("(2^3)^2").to_string() == "(2^3)^2");
    CHECK(FieldExpr::parse("2^(3^2)").to_string() == "2^3^2");
    CHECK(FieldExpr::parse("(-x)^2").to_string() == "(-x)^2");
    CHECK(FieldExpr::parse("1-(2-3)").to_string() == "1 - (2 - 3)");
}

TEST_CASE("round-trip property over 200 random expressions") {
    const auto r = oracle::round_trip_property(2024, 200);
    CHECK(r.cases == 200);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
}

TEST_CASE("precedence oracle over 200 random expressions") {
    const auto r = oracle::precedence_property(2024, 200);
    CHECK(r.cases == 200);
    CHECK_MESSAGE(r.failures == 0, r.first_failure);
}

TEST_CASE("properties hold across seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CHECK(oracle::round_trip_property(seed, 200).failures == 0);
        CHECK(oracle::precedence_property(seed, 200).failures == 0);
    }
}
