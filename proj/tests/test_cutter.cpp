#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "windex/cutter.hpp"
#include "windex/error.hpp"
#include "windex/generators.hpp"
#include "windex/prescribed_ode.hpp"
#include "windex/stokes.hpp"

using namespace windex;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidInput;
}

bool no_negative_component(const Curve& c) {
    const IndexMap m = index_map(c, kCutterResolution);
    for (int v : m.component_index) {
        if (v < 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("topological component counts") {
    CHECK(topological_components(self_intersections(circle_curve(512))) == 2);
    CHECK(topological_components(self_intersections(lemniscate_generate(1.0, 4096))) == 3);
    CHECK(topological_components(self_intersections(flower_generate())) == 7);
}

TEST_CASE("negative regions") {
    CHECK(negative_region(circle_curve(2048)).components.empty());

    const NegativeRegion f = negative_region(flower_generate());
    REQUIRE(f.components.size() == 1);
    CHECK(f.map.component_index[static_cast<std::size_t>(f.components[0])] == -1);

    const NegativeRegion l = negative_region(lemniscate_generate(1.0, 4096));
    CHECK(l.components.size() == 1);
}

TEST_CASE("flower left extremity is the lower of the two leftmost crossings") {
    const Curve f = flower_generate();
    const auto records = self_intersections(f);
    const NegativeRegion neg = negative_region(f);
    const LeftExtremity x = left_extremity(f, neg.components, neg.map, records);
    CHECK(x.tie);
    CHECK(x.point.x == doctest::Approx(-std::cos(pi / 5)).epsilon(1e-3));
    CHECK(x.point.y == doctest::Approx(-std::sin(pi / 5)).epsilon(1e-3));
    CHECK(x.tied_with.y > x.point.y);
    const IntersectionRecord r = assert_self_intersection(f, x.point, records);
    CHECK(r.order == 2);

    const Sector s = least_index_sector(f, r, records);
    CHECK(s.least_index == -1);
    CHECK(s.ends.size() == 4);
    CHECK(f.param_distance(s.s1, s.s2) > f.eps_param());
}

TEST_CASE("lemniscate with its left lobe negative stops at a regular point") {
    const Curve lem = lemniscate_generate(1.0, 4096);
    CHECK(code_of([&] { run(lem); }) == ErrorCode::RegularLeftmost);
}

TEST_CASE("circle needs no cut") {
    const Curve c = circle_curve(1024);
    const RunResult r = run(c);
    CHECK(r.traces.empty());
    CHECK(r.final_curve.vertices() == c.vertices());
    CHECK_FALSE(r.certificate);
}

TEST_CASE("flower is done after one cut") {
    const Curve f = flower_generate();
    const RunResult r = run(f);
    REQUIRE(r.traces.size() == 1);
    const CutTrace& t = r.traces[0];
    CHECK(t.components_before == 7);
    CHECK(t.components_after < t.components_before);
    CHECK(is_well_oriented(t.new_singularity, {1, 0}));
    CHECK(distance(f.point_at(t.s1), t.chosen_point) <= 4 * f.eps_geo() + f.spacing());
    CHECK(distance(f.point_at(t.s2), t.chosen_point) <= 4 * f.eps_geo() + f.spacing());

    const auto sings = singularities_of(r.final_curve);
    REQUIRE(sings.size() == 1);
    CHECK(is_well_oriented(sings[0], {1, 0}));
    CHECK(r.tangent_sum > 0.0);
    CHECK(r.own_boundary < 0.0);
    CHECK(r.certificate);
    CHECK(r.final_curve.length() == doctest::Approx(2 * pi).epsilon(1e-9));
    CHECK(no_negative_component(r.final_curve));
}

TEST_CASE("every vertex of a cut curve comes from the previous curve") {
    const Curve f = flower_generate();
    const RunResult r = run(f);
    REQUIRE(r.steps.size() == 1);
    const CutTrace& t = r.traces[0];
    const Curve& next = r.steps[0];
    const double tol = 1e-9 * f.bbox().diameter();
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (next.is_corner_vertex(i)) continue;
        const Vec2 back = t.chosen_point + (next.vertex(i) - t.chosen_point) * (1.0 / t.scale);
        double best = INFINITY;
        for (const Vec2& v : f.vertices()) best = std::min(best, distance(v, back));
        REQUIRE(best <= tol);
    }
}

TEST_CASE("the synthetic curve needs exactly two cuts") {
    const Curve c = nested_loop_curve();
    CHECK(positively_curved(c));
    const RunResult r = run(c);
    REQUIRE(r.traces.size() == 2);
    CHECK(r.traces[0].components_after < r.traces[0].components_before);
    CHECK(r.traces[1].components_before == r.traces[0].components_after);
    CHECK(r.traces[1].components_after < r.traces[1].components_before);
    for (const auto& s : singularities_of(r.final_curve)) CHECK(is_well_oriented(s, {1, 0}));
    CHECK(r.certificate);
    CHECK(no_negative_component(r.final_curve));

    // Singularities only ever come from the previous curve or the new cut.
    const auto first = singularities_of(r.steps[0]);
    const auto second = singularities_of(r.steps[1]);
    CHECK(first.size() == 1);
    CHECK(second.size() <= first.size() + 1);
}

TEST_CASE("iteration cap") {
    RunOptions opt;
    opt.max_iter = 0;
    CHECK(code_of([&] { run(flower_generate(), opt); }) == ErrorCode::MaxIterExceeded);
}

TEST_CASE("rotating curve and direction together changes nothing") {
    const double a = 0.7;
    const Curve f = flower_generate();
    RunOptions opt;
    opt.direction = rotated(Vec2{1, 0}, a);
    const RunResult r = run(f.rotated(a), opt);
    const RunResult base = run(f);
    REQUIRE(r.traces.size() == base.traces.size());
    CHECK(r.tangent_sum == doctest::Approx(base.tangent_sum).epsilon(1e-6));
    CHECK(distance(r.traces[0].chosen_point, rotated(base.traces[0].chosen_point, a)) < 1e-3);
}

TEST_CASE("the lemniscate cut at the origin keeps a lobe where H decreases along e") {
    // Reversed, the right lobe is negative, the origin is the left extremity
    // and the cut succeeds. The curvature of this orientation is -c(x1), which
    // decreases in x1, so the monotonicity hypothesis fails and no
    // contradiction follows.
    const Curve lem = lemniscate_generate(1.0, 4096).reversed();
    const RunResult r = run(lem);
    REQUIRE(r.traces.size() == 1);
    CHECK(norm(r.traces[0].chosen_point) < 1e-6);
    const Curve kept = r.steps[0].scaled_about(r.traces[0].chosen_point, 1.0 / r.traces[0].scale);
    double max_x = -INFINITY;
    for (const Vec2& v : kept.vertices()) max_x = std::max(max_x, v.x);
    CHECK(max_x <= 1e-6);
    for (std::size_t i = 0; i < lem.size(); i += 97) {
        const double x = lem.vertex(i).x;
        if (std::fabs(x) < 0.05) continue;
        CHECK(vertex_curvature(lem, i) == doctest::Approx(-lemniscate_curvature(1.0, x)).epsilon(1e-3));
    }
    CHECK(-lemniscate_curvature(1.0, -0.4) > -lemniscate_curvature(1.0, -0.3));
}
