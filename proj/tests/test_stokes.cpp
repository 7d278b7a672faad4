#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "windex/cutter.hpp"
#include "windex/error.hpp"
#include "windex/generators.hpp"
#include "windex/intersections.hpp"
#include "windex/prescribed_ode.hpp"
#include "windex/stokes.hpp"

using namespace windex;
using std::numbers::pi;

namespace {

double shoelace(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

// Vertices of the curve strictly between params s and t (walking forward),
// framed by the points at s and t.
std::vector<Vec2> arc(const Curve& c, double s, double t) {
    std::vector<Vec2> out{c.point_at(s)};
    if (t < s) t += c.length();
    for (std::size_t i = 0; i < 2 * c.size(); ++i) {
        const double p = c.param_of_vertex(i % c.size()) + (i >= c.size() ? c.length() : 0.0);
        if (p > s && p < t) out.push_back(c.vertex(i));
    }
    out.push_back(c.point_at(t));
    return out;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("circle benchmark: both sides equal pi") {
    const Curve c = circle_curve(2048);
    const VectorField V = vector_field("x,0");
    const Quadrature g = lhs_grid(c, V, 512);
    CHECK(close(g.value, pi, 1e-3));
    CHECK(close(g.value, pi, g.bound));
    CHECK(close(rhs_boundary(c, V), pi, 1e-3));
}

TEST_CASE("constant fields integrate to zero") {
    const Curve c = fourier_loop(4);
    const VectorField V = constant_vector({0.3, -1.2});
    CHECK(lhs_grid(c, V, 256).value == 0.0);
    CHECK(std::fabs(rhs_boundary(c, V)) <= 1e-6);
}

TEST_CASE("flower: petals minus centre by a polygon-area oracle") {
    const Curve f = flower_generate();
    const auto rec = self_intersections(f);
    REQUIRE(rec.size() == 5);
    // Sorted crossing params alternate between the two visits of each point.
    std::vector<std::pair<double, Vec2>> ps;
    for (const auto& r : rec) {
        for (double p : r.params) ps.push_back({p, r.point});
    }
    std::sort(ps.begin(), ps.end(), [](auto& a, auto& b) { return a.first < b.first; });
    double petals = 0.0;
    std::vector<Vec2> centre;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const auto& [s, p] = ps[k];
        const auto& [t, q] = ps[(k + 1) % ps.size()];
        auto piece = arc(f, s, t);
        if (distance(p, q) < 1e-9) {
            petals += shoelace(piece);
        } else {
            centre.insert(centre.end(), piece.begin(), piece.end() - 1);
        }
    }
    const double centre_area = shoelace(centre);
    CHECK(centre_area < 0.0);  // the centre is traversed clockwise
    const double expected = petals + centre_area;

    const VectorField V = vector_field("x,0");
    const Quadrature g = lhs_grid(f, V, 512);
    const Quadrature k = lhs_components(f, V, 512);
    CHECK(close(g.value, expected, g.bound + 1e-3));
    CHECK(close(k.value, expected, k.bound + 1e-3));
    CHECK(close(rhs_boundary(f, V), expected, 1e-3));
    CHECK(close(shoelace(f.vertices()), expected, 1e-9));
}

TEST_CASE("lemniscate lobes cancel") {
    const Curve lem = lemniscate_generate(1.0, 4096);
    const VectorField V = vector_field("x,0");
    const Quadrature k = lhs_components(lem, V, 512);
    CHECK(std::fabs(k.value) <= k.bound);
    const ScalarField H = lemniscate_field(1.0);
    CHECK(std::fabs(rhs_boundary(lem, scaled_direction(H, {1, 0}, 1e-6))) <= 1e-3);
}

TEST_CASE("grid and component sums agree") {
    for (const char* field : {"x,0", "0,y", "x^2,x*y", "sin(x),cos(y)"}) {
        const VectorField V = vector_field(field);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Curve c = fourier_loop(seed);
            const IndexMap m = index_map(c, 256);
            const Quadrature g = lhs_grid(c, V, m), k = lhs_components(c, V, m);
            CHECK(close(g.value, k.value, g.bound + k.bound + 1e-2 * (1 + std::fabs(g.value))));
            const double rhs = rhs_boundary(c, V);
            CHECK(close(g.value, rhs, g.bound + 1e-2 * (1 + std::fabs(rhs))));
        }
    }
}

TEST_CASE("orientation flips both sides") {
    const Curve c = fourier_loop(6);
    const VectorField V = vector_field("x^2,x*y");
    const double a = lhs_grid(c, V, 256).value, b = lhs_grid(c.reversed(), V, 256).value;
    CHECK(a == doctest::Approx(-b).epsilon(1e-12));
    CHECK(rhs_boundary(c, V) == doctest::Approx(-rhs_boundary(c.reversed(), V)).epsilon(1e-12));
}

TEST_CASE("circle error shrinks under refinement") {
    const Curve c = circle_curve(2048);
    const VectorField V = vector_field("x,0");
    const double rhs = rhs_boundary(c, V);
    std::vector<double> err, bound;
    for (std::size_t res : {128, 256, 512, 1024}) {
        const Quadrature g = lhs_grid(c, V, res);
        err.push_back(std::fabs(g.value - rhs));
        bound.push_back(g.bound);
    }
    CHECK(err.back() < err.front());
    for (std::size_t i = 1; i < bound.size(); ++i) CHECK(bound[i] < bound[i - 1]);
    for (std::size_t i = 0; i < err.size(); ++i) CHECK(err[i] <= bound[i] + 1e-5);
}

TEST_CASE("quadrature is bit-stable") {
    const Curve c = flower_generate();
    const VectorField V = vector_field("sin(x),cos(y)");
    CHECK(lhs_grid(c, V, 300).value == lhs_grid(c, V, 300).value);
}

TEST_CASE("obstruction on closed smooth curves") {
    const Curve c = circle_curve(2048);
    const Obstruction o = obstruction_functional(c, constant_scalar(1.0), {1, 0}, 256);
    CHECK(o.tangent_sum == 0.0);
    CHECK(std::fabs(o.boundary_side) <= 1e-9);
    CHECK(std::fabs(o.area_side) <= o.area_bound + 1e-12);

    const Curve lem = lemniscate_generate(1.0, 4096);
    const Obstruction l = obstruction_functional(lem, lemniscate_field(1.0), {1, 0}, 512);
    CHECK(std::fabs(l.area_side) <= l.area_bound);
}

TEST_CASE("corners: own-curvature boundary balances the tangent sum") {
    for (const Curve& c : {flower_generate(), nested_loop_curve()}) {
        const RunResult r = run(c);
        REQUIRE(r.singularities >= 1);
        CHECK(r.tangent_sum > 0.0);
        CHECK(std::fabs(r.own_boundary + r.tangent_sum) <= 1e-2);
    }
}

TEST_CASE("embedded specialisation") {
    const Curve c = circle_curve(2048);
    const EmbeddedReport one = embedded_specialization_check(c, constant_scalar(1.0));
    CHECK(one.pass);
    CHECK(std::fabs(one.boundary.x) <= 1e-3);
    CHECK(std::fabs(one.area.x) <= 1e-3);

    const EmbeddedReport lin = embedded_specialization_check(c, scalar_field("2+x"));
    CHECK(lin.pass);
    CHECK(close(lin.area.x, pi, 1e-3));
    CHECK(close(lin.boundary.x, pi, 1e-3));
    CHECK(std::fabs(lin.boundary.y) <= 1e-3);

    bool raised = false;
    try {
        embedded_specialization_check(lemniscate_generate(1.0, 1024), constant_scalar(1.0));
    } catch (const Error& e) {
        raised = e.code() == ErrorCode::NotEmbedded;
    }
    CHECK(raised);
}

TEST_CASE("hypothesis sampling") {
    CHECK(sample_hypothesis(scalar_field("1 + x/10"), {1, 0}, {-2, -2}, {2, 2}).pass);
    CHECK(sample_hypothesis(scalar_field("exp(x)"), {1, 0}, {-2, -2}, {2, 2}).pass);
    const auto flat = sample_hypothesis(constant_scalar(1.0), {1, 0}, {-2, -2}, {2, 2});
    CHECK_FALSE(flat.pass);
    CHECK(flat.positive_fraction == 1.0);
}
