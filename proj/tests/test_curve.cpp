#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "windex/curve.hpp"
#include "windex/error.hpp"
#include "windex/generators.hpp"
#include "windex/winding.hpp"
#include "windex/prescribed_ode.hpp"

using namespace windex;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidInput;  // sentinel, never an expected code below
}

double polyline_length(const std::vector<Vec2>& v) {
    double L = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) L += std::hypot(v[(i + 1) % v.size()].x - v[i].x, v[(i + 1) % v.size()].y - v[i].y);
    return L;
}

}  // namespace

TEST_CASE("resampling a unit square keeps its perimeter") {
    const Curve sq = resample_arclength(square_curve(1.0), 400);
    CHECK(sq.size() == 400);
    CHECK(sq.length() == doctest::Approx(4.0).epsilon(1e-6));
    for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq.segment_length(i) == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("resampling preserves the polyline length of a coarse circle") {
    const Curve c = circle_curve(32);
    const double chord = 2.0 * 32.0 * std::sin(pi / 32.0);
    const Curve r = resample_arclength(c, 1024);
    CHECK(c.length() == doctest::Approx(chord).epsilon(1e-12));
    CHECK(r.length() == doctest::Approx(chord).epsilon(1e-6));
}

TEST_CASE("resampled vertices lie on the input polyline") {
    const Curve once = resample_arclength(fourier_loop(3, 600), 512);
    const Curve twice = resample_arclength(once, 512);
    REQUIRE(twice.size() == once.size());
    double worst = 0.0;
    for (const Vec2& v : twice.vertices()) worst = std::max(worst, distance_to_curve(once, v));
    CHECK(worst <= 1e-12 * once.bbox().diameter());
    CHECK(twice.length() <= once.length());
    CHECK(twice.length() == doctest::Approx(once.length()).epsilon(5e-3));
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK(code_of([] { Curve({{0, 0}, {1, 0}}); }) == ErrorCode::DegenerateCurve);
    CHECK(code_of([] { Curve({{0, 0}, {0, 0}, {0, 0}}); }) == ErrorCode::DegenerateCurve);
}

TEST_CASE("frame follows the rot90 convention") {
    const Curve ccw = circle_curve(2048);
    const FrameSample f = frame_at(ccw, 0.0);
    CHECK(f.point.x == doctest::Approx(1.0));
    CHECK(f.tangent.y == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(f.normal.x == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(std::fabs(dot(f.tangent, f.normal)) < 1e-12);
    CHECK(std::fabs(norm(f.tangent) - 1.0) < 1e-12);

    const Curve cw = circle_curve(2048, 1.0, {}, false);
    const FrameSample g = frame_at(cw, 0.0);
    CHECK(g.tangent.y == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(g.normal.x == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("frame at a corner raises AtCorner") {
    const Curve sq = square_curve(1.0, 10);
    CHECK(code_of([&] { frame_at(sq, 1.0); }) == ErrorCode::AtCorner);
    CHECK_NOTHROW(frame_at(sq, 0.55));
}

TEST_CASE("circle curvature has the orientation's sign") {
    const Curve ccw = circle_curve(2048);
    const Curve cw = circle_curve(2048, 1.0, {}, false);
    for (double s = 0.0; s < ccw.length(); s += 0.37) {
        CHECK(discrete_curvature(ccw, s) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(discrete_curvature(cw, s) == doctest::Approx(-1.0).epsilon(1e-3));
    }
}

TEST_CASE("lemniscate curvature at the right apex is 3") {
    const Curve lem = lemniscate_generate(1.0, 4096);
    std::size_t apex = 0;
    for (std::size_t i = 0; i < lem.size(); ++i) {
        if (lem.vertex(i).x > lem.vertex(apex).x) apex = i;
    }
    CHECK(vertex_curvature(lem, apex) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("square corners have |delta t| = sqrt 2") {
    const auto s = singularities_of(square_curve(1.0, 25));
    REQUIRE(s.size() == 4);
    for (const auto& x : s) {
        CHECK(norm(x.delta_t) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
        CHECK(std::fabs(norm(x.t_minus) - 1.0) < 1e-12);
    }
    CHECK(singularities_of(circle_curve(256)).empty());
}

TEST_CASE("turning number is an integer") {
    CHECK(total_curvature(circle_curve(2048)) / (2 * pi) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(total_curvature(circle_curve(2048, 1.0, {}, true, 2)) / (2 * pi) == doctest::Approx(2.0).epsilon(1e-2));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double w = total_curvature(fourier_loop(seed)) / (2 * pi);
        CHECK(std::fabs(w - std::round(w)) < 1e-2);
    }
}

TEST_CASE("smooth convex curves are positively curved") {
    const Curve ellipse = sample_by_arclength([](double t) { return Vec2{2 * std::cos(t), std::sin(t)}; },
                                              [](double t) { return Vec2{-2 * std::sin(t), std::cos(t)}; }, 0, 2 * pi,
                                              2048);
    CHECK(positively_curved(ellipse));
    CHECK_FALSE(positively_curved(ellipse.reversed()));
    CHECK(orient_positive(ellipse.reversed()).orientation_note() == OrientationNote::PositivelyCurved);
}

TEST_CASE("arc-length sampling is uniform and lands on the curve") {
    const Curve ellipse = sample_by_arclength([](double t) { return Vec2{2 * std::cos(t), std::sin(t)}; },
                                              [](double t) { return Vec2{-2 * std::sin(t), std::cos(t)}; }, 0, 2 * pi,
                                              1000);
    for (std::size_t i = 0; i < ellipse.size(); ++i) {
        const Vec2 p = ellipse.vertex(i);
        CHECK(std::fabs(p.x * p.x / 4 + p.y * p.y - 1.0) < 1e-12);
    }
    std::vector<double> lens;
    for (std::size_t i = 0; i < ellipse.size(); ++i) lens.push_back(ellipse.segment_length(i));
    const auto [lo, hi] = std::minmax_element(lens.begin(), lens.end());
    CHECK((*hi - *lo) / *hi < 1e-4);
}

TEST_CASE("shoelace area matches an independent sum") {
    const Curve c = fourier_loop(11, 512);
    double twice = 0.0;
    const auto& v = c.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()];
        twice += (a.x + b.x) * (b.y - a.y);
    }
    CHECK(signed_area(c) == doctest::Approx(0.5 * twice).epsilon(1e-12));
    CHECK(c.length() == doctest::Approx(polyline_length(v)).epsilon(1e-12));
}

TEST_CASE("corner detection on imported polylines") {
    std::vector<Vec2> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({i * 0.1, 0.0});
    for (int i = 0; i < 10; ++i) pts.push_back({1.0, i * 0.1});
    for (int i = 0; i < 10; ++i) pts.push_back({1.0 - i * 0.1, 1.0});
    for (int i = 0; i < 10; ++i) pts.push_back({0.0, 1.0 - i * 0.1});
    const auto corners = detect_corners(pts);
    CHECK(corners == std::vector<std::size_t>{0, 10, 20, 30});
}

TEST_CASE("a square is recognised as a square after rotation") {
    const Curve sq = square_curve(2.0, 8).rotated(0.3);
    CHECK(sq.length() == doctest::Approx(8.0));
    CHECK(signed_area(sq) == doctest::Approx(4.0));
}
