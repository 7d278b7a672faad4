#include "windex/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "windex/error.hpp"
#include "windex/intersections.hpp"
#include "windex/summation.hpp"

namespace windex {

namespace {

double fd_step(const Curve& curve) { return 1e-6 * curve.bbox().diameter(); }

// Ids of sub-cells (on the refined grid) whose centre lies within half a
// sub-cell diagonal of the curve, sorted.
std::vector<std::uint64_t> fine_band(const Curve& curve, Vec2 origin, double sub, std::size_t fnx, std::size_t fny) {
    std::vector<std::uint64_t> ids;
    const double band = 0.5 * std::sqrt(2.0) * sub;
    auto clamp_cell = [&](double v, double o, std::size_t n) {
        return static_cast<std::size_t>(std::clamp(std::floor((v - o) / sub), 0.0, static_cast<double>(n - 1)));
    };
    for (std::size_t s = 0; s < curve.size(); ++s) {
        const Vec2 a = curve.segment_start(s), b = curve.segment_end(s);
        const std::size_t i0 = clamp_cell(std::min(a.x, b.x) - band, origin.x, fnx);
        const std::size_t i1 = clamp_cell(std::max(a.x, b.x) + band, origin.x, fnx);
        const std::size_t j0 = clamp_cell(std::min(a.y, b.y) - band, origin.y, fny);
        const std::size_t j1 = clamp_cell(std::max(a.y, b.y) + band, origin.y, fny);
        for (std::size_t j = j0; j <= j1; ++j) {
            for (std::size_t i = i0; i <= i1; ++i) {
                const Vec2 c = origin + Vec2{(static_cast<double>(i) + 0.5) * sub, (static_cast<double>(j) + 0.5) * sub};
                if (point_segment_distance(c, a, b) <= band) ids.push_back(static_cast<std::uint64_t>(j) * fnx + i);
            }
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace

Quadrature lhs_grid(const Curve& curve, const VectorField& field, const IndexMap& map) {
    const double h = fd_step(curve);
    const double area = map.cell * map.cell;
    Quadrature q;
    std::vector<double> terms;
    int lo = 0, hi = 0;

    for (std::size_t j = 0; j < map.ny; ++j) {
        for (std::size_t i = 0; i < map.nx; ++i) {
            const int ind = map.index[map.id(i, j)];
            if (ind == IndexMap::kUnknown) {
                ++q.unknown_cells;
                continue;
            }
            lo = std::min(lo, ind);
            hi = std::max(hi, ind);
            if (ind != 0) terms.push_back(field.divergence(map.center(i, j), h) * ind * area);
        }
    }

    const std::size_t s = kBandRefinement;
    const double sub = map.cell / static_cast<double>(s);
    const std::size_t fnx = map.nx * s, fny = map.ny * s;
    const ScanlineWinding fine(curve, map.origin.y, sub, fny);
    const auto band = fine_band(curve, map.origin, sub, fnx, fny);
    std::vector<int> row(s);
    double max_div = 0.0;
    for (std::size_t j = 0; j < map.ny; ++j) {
        for (std::size_t i = 0; i < map.nx; ++i) {
            if (map.index[map.id(i, j)] != IndexMap::kUnknown) continue;
            for (std::size_t k = 0; k < s; ++k) {
                const std::size_t r = j * s + k;
                const double x0 = map.origin.x + static_cast<double>(i) * map.cell;
                fine.fill_row(r, x0, sub, s, row.data());
                for (std::size_t l = 0; l < s; ++l) {
                    const int ind = row[l];
                    lo = std::min(lo, ind);
                    hi = std::max(hi, ind);
                    const std::uint64_t id = static_cast<std::uint64_t>(r) * fnx + i * s + l;
                    const bool unresolved = std::binary_search(band.begin(), band.end(), id);
                    if (ind == 0 && !unresolved) continue;
                    const Vec2 p{x0 + (static_cast<double>(l) + 0.5) * sub, fine.row_y(r)};
                    const double d = field.divergence(p, h);
                    if (unresolved) {
                        ++q.unresolved_subcells;
                        max_div = std::max(max_div, std::fabs(d));
                    }
                    if (ind != 0) terms.push_back(d * ind * sub * sub);
                }
            }
        }
    }
    q.value = pairwise_sum(terms);
    const int jump = std::max(1, hi - lo);
    q.bound = static_cast<double>(q.unresolved_subcells) * sub * sub * max_div * jump;
    return q;
}

Quadrature lhs_grid(const Curve& curve, const VectorField& field, std::size_t resolution) {
    return lhs_grid(curve, field, index_map(curve, resolution));
}

Quadrature lhs_components(const Curve& curve, const VectorField& field, const IndexMap& map) {
    if (!map.index_constant) {
        throw Error(ErrorCode::IndexNotConstant, "a labelled component carries more than one index");
    }
    const double h = fd_step(curve);
    const double area = map.cell * map.cell;
    std::vector<std::vector<double>> per(map.component_count());
    Quadrature q;
    double max_div = 0.0;
    for (std::size_t j = 0; j < map.ny; ++j) {
        for (std::size_t i = 0; i < map.nx; ++i) {
            const std::size_t c = map.id(i, j);
            const Vec2 p = map.center(i, j);
            if (map.index[c] == IndexMap::kUnknown) {
                ++q.unknown_cells;
                max_div = std::max(max_div, std::fabs(field.divergence(p, h)));
                continue;
            }
            const int comp = map.component[c];
            if (comp == map.unbounded) continue;
            if (map.index[c] != map.component_index[static_cast<std::size_t>(comp)]) {
                throw Error(ErrorCode::IndexNotConstant, "cell index disagrees with its component");
            }
            per[static_cast<std::size_t>(comp)].push_back(field.divergence(p, h) * area);
        }
    }
    std::vector<double> totals;
    for (std::size_t k = 0; k < per.size(); ++k) {
        if (static_cast<int>(k) == map.unbounded || per[k].empty()) continue;
        totals.push_back(map.component_index[k] * pairwise_sum(per[k]));
    }
    q.value = pairwise_sum(totals);
    const int reach = std::max({1, std::abs(map.min_index()), std::abs(map.max_index())});
    q.bound = static_cast<double>(q.unknown_cells) * area * max_div * reach;
    return q;
}

Quadrature lhs_components(const Curve& curve, const VectorField& field, std::size_t resolution) {
    return lhs_components(curve, field, index_map(curve, resolution));
}

double rhs_boundary(const Curve& curve, const VectorField& field) {
    std::vector<double> terms(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec2 a = curve.segment_start(i), b = curve.segment_end(i);
        terms[i] = dot(field((a + b) * 0.5), rot90(b - a));
    }
    return -pairwise_sum(terms);
}

double tangent_sum(const Curve& curve, Vec2 direction) {
    Vec2 total;
    for (const Singularity& s : singularities_of(curve)) total += s.delta_t;
    return dot(direction, total);
}

double own_curvature_boundary(const Curve& curve, Vec2 direction) {
    const std::size_t n = curve.size();
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool c0 = curve.is_corner_vertex(i), c1 = curve.is_corner_vertex(i + 1);
        double kappa = 0.0;
        if (!c0 && !c1) kappa = 0.5 * (vertex_curvature(curve, i) + vertex_curvature(curve, i + 1));
        else if (!c0) kappa = vertex_curvature(curve, i);
        else if (!c1) kappa = vertex_curvature(curve, i + 1);
        terms[i] = kappa * dot(direction, rot90(curve.segment_end(i) - curve.segment_start(i)));
    }
    return -pairwise_sum(terms);
}

Obstruction obstruction_functional(const Curve& curve, const ScalarField& H, Vec2 direction, std::size_t resolution) {
    const Vec2 e = normalized(direction);
    const VectorField v = scaled_direction(H, e, fd_step(curve));
    const Quadrature area = lhs_grid(curve, v, resolution);
    Obstruction o;
    o.area_side = area.value;
    o.area_bound = area.bound;
    o.boundary_side = rhs_boundary(curve, v);
    o.tangent_sum = tangent_sum(curve, e);
    return o;
}

EmbeddedReport embedded_specialization_check(const Curve& curve, const ScalarField& H, std::size_t resolution,
                                             double tolerance) {
    const auto records = self_intersections(curve);
    if (!records.empty()) {
        throw Error(ErrorCode::NotEmbedded, "curve has " + std::to_string(records.size()) + " self-intersections");
    }
    const IndexMap map = index_map(curve, resolution);
    std::size_t best = 0;
    EmbeddedReport report;
    for (std::size_t k = 0; k < map.component_count(); ++k) {
        if (static_cast<int>(k) == map.unbounded) continue;
        if (map.component_cells[k] > best) {
            best = map.component_cells[k];
            report.interior_index = map.component_index[k];
        }
    }
    if (report.interior_index == 0) throw Error(ErrorCode::InvariantViolated, "no enclosed region found");
    const double sigma = report.interior_index;
    const double h = fd_step(curve);

    std::vector<double> bx(curve.size()), by(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec2 a = curve.segment_start(i), b = curve.segment_end(i);
        const Vec2 w = rot90(b - a) * (-sigma * H((a + b) * 0.5));
        bx[i] = w.x;
        by[i] = w.y;
    }
    report.boundary = {pairwise_sum(bx), pairwise_sum(by)};

    VectorField vx{"H,0", [&H](Vec2 p) { return Vec2{H(p), 0.0}; }, [&H, h](Vec2 p) { return H.gradient(p, h).x; }};
    VectorField vy{"0,H", [&H](Vec2 p) { return Vec2{0.0, H(p)}; }, [&H, h](Vec2 p) { return H.gradient(p, h).y; }};
    const Quadrature qx = lhs_grid(curve, vx, map), qy = lhs_grid(curve, vy, map);
    report.area = Vec2{qx.value, qy.value} * sigma;
    report.bound = {qx.bound, qy.bound};
    report.pass = std::fabs(report.area.x - report.boundary.x) <= report.bound.x + tolerance &&
                  std::fabs(report.area.y - report.boundary.y) <= report.bound.y + tolerance;
    return report;
}

HypothesisReport sample_hypothesis(const ScalarField& H, Vec2 direction, Vec2 lo, Vec2 hi, std::size_t samples,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
    const double h = 1e-6 * distance(lo, hi);
    const Vec2 e = normalized(direction);
    std::size_t positive = 0, monotone = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec2 p{ux(rng), uy(rng)};
        if (H(p) > 0.0) ++positive;
        if (dot(H.gradient(p, h), e) > 0.0) ++monotone;
    }
    HypothesisReport r;
    r.samples = samples;
    r.positive_fraction = samples ? static_cast<double>(positive) / static_cast<double>(samples) : 0.0;
    r.monotone_fraction = samples ? static_cast<double>(monotone) / static_cast<double>(samples) : 0.0;
    r.pass = r.positive_fraction > 0.999 && r.monotone_fraction > 0.999;
    return r;
}

}  // namespace windex
