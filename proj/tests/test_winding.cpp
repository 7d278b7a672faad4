#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "windex/error.hpp"
#include "windex/generators.hpp"
#include "windex/prescribed_ode.hpp"
#include "windex/winding.hpp"

using namespace windex;
using std::numbers::pi;

namespace {

std::map<int, int> index_histogram(const IndexMap& m) {
    std::map<int, int> h;
    for (int v : m.component_index) ++h[v];
    return h;
}

}  // namespace

TEST_CASE("circle winding numbers") {
    const Curve c = circle_curve(2048);
    CHECK(winding_number(c, {0, 0}) == 1);
    CHECK(winding_number(c, {3, 0}) == 0);
    CHECK(winding_number(c.reversed(), {0, 0}) == -1);
    CHECK(winding_number(circle_curve(2048, 1.0, {}, true, 2), {0.1, 0.2}) == 2);
}

TEST_CASE("points on the curve are rejected") {
    const Curve c = circle_curve(64);
    bool raised = false;
    try {
        winding_number(c, c.vertex(5));
    } catch (const Error& e) {
        raised = e.code() == ErrorCode::OnCurve;
    }
    CHECK(raised);
}

TEST_CASE("flower: petals +1, centre -1") {
    const Curve f = flower_generate();
    CHECK(winding_number(f, {0, 0}) == -1);
    for (int k = 0; k < 5; ++k) {
        const double a = -2 * pi * k / 5, r = 1.375;
        CHECK(winding_number(f, {r * std::cos(a), r * std::sin(a)}) == 1);
    }
}

TEST_CASE("ray crossings agree with angle accumulation") {
    std::mt19937_64 rng(42);
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; checked < 1000; ++seed) {
        const Curve c = fourier_loop(seed, 512);
        const BBox& b = c.bbox();
        std::uniform_real_distribution<double> ux(b.lo.x - 0.2, b.hi.x + 0.2), uy(b.lo.y - 0.2, b.hi.y + 0.2);
        for (int k = 0; k < 50; ++k, ++checked) {
            const Vec2 p{ux(rng), uy(rng)};
            if (distance_to_curve(c, p) <= 1e-6) continue;
            REQUIRE(winding_number(c, p) == winding_number_by_angle(c, p));
        }
    }
}

TEST_CASE("reversal negates every index") {
    const Curve c = fourier_loop(8, 1024);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 200; ++k) {
        const Vec2 p{u(rng), u(rng)};
        if (distance_to_curve(c, p) <= 1e-6) continue;
        CHECK(winding_number(c.reversed(), p) == -winding_number(c, p));
    }
}

TEST_CASE("index map of the circle") {
    const IndexMap m = index_map(circle_curve(2048), 64);
    CHECK(m.component_count() == 2);
    CHECK(m.component_index[static_cast<std::size_t>(m.unbounded)] == 0);
    CHECK(index_histogram(m) == std::map<int, int>{{0, 1}, {1, 1}});
}

TEST_CASE("index map of the lemniscate has three components") {
    const IndexMap m = index_map(lemniscate_generate(1.0, 4096), 512);
    CHECK(index_histogram(m) == std::map<int, int>{{-1, 1}, {0, 1}, {1, 1}});
}

TEST_CASE("index map of the flowers") {
    CHECK(index_histogram(index_map(flower_generate(), 512)) == std::map<int, int>{{-1, 1}, {0, 1}, {1, 5}});
    CHECK(index_histogram(index_map(flower_generate({.petals = 3}), 512)) == std::map<int, int>{{-1, 1}, {0, 1}, {1, 3}});
}

TEST_CASE("index map invariants") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Curve c = fourier_loop(seed);
        const IndexMap m = index_map(c, 256);
        CHECK(m.index_constant);
        CHECK(m.component_index[static_cast<std::size_t>(m.unbounded)] == 0);
        const double half_diag = 0.5 * std::sqrt(2.0) * m.cell;
        for (std::size_t j = 0; j < m.ny; j += 7) {
            for (std::size_t i = 0; i < m.nx; i += 7) {
                const int v = m.index[m.id(i, j)];
                if (v == IndexMap::kUnknown) continue;
                CHECK(distance_to_curve(c, m.center(i, j)) > half_diag);
                CHECK(v == winding_number(c, m.center(i, j)));
            }
        }
    }
}

TEST_CASE("scanline winding matches point queries") {
    const Curve c = flower_generate();
    const ScanlineWinding s(c, -2.0, 0.01, 400);
    std::vector<int> row(300);
    for (std::size_t r = 0; r < 400; r += 13) {
        s.fill_row(r, -1.5, 0.01, row.size(), row.data());
        for (std::size_t k = 0; k < row.size(); k += 11) {
            const Vec2 p{-1.5 + (static_cast<double>(k) + 0.5) * 0.01, s.row_y(r)};
            if (distance_to_curve(c, p) < 1e-9) continue;
            CHECK(row[k] == winding_number(c, p));
        }
    }
}

TEST_CASE("index jump law on circle, lemniscate and flower") {
    for (const Curve& c : {circle_curve(2048), lemniscate_generate(1.0, 4096), flower_generate()}) {
        const IndexJumpReport r = verify_index_jump(c, 100, 7);
        CHECK(r.trials == 100);
        CHECK(r.failures.empty());
        CHECK(r.passed + r.band == 100);
        CHECK(r.passed >= 99);
    }
}
