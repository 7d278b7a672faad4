#include "windex/cutter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "windex/error.hpp"
#include "windex/stokes.hpp"

namespace windex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRingProbes = 16;
constexpr int kSectorAttempts = 8;

std::string describe(Vec2 p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

// True when some probe on a small ring around p has negative index.
bool borders_negative(const Curve& curve, Vec2 p, double radius) {
    for (int k = 0; k < kRingProbes; ++k) {
        const double a = 0.1 + kTwoPi * k / kRingProbes;
        try {
            if (winding_number(curve, p + Vec2{std::cos(a), std::sin(a)} * radius) < 0) return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OnCurve) throw;
        }
    }
    return false;
}

const IntersectionRecord* nearest_record(const std::vector<IntersectionRecord>& records, Vec2 p, double within) {
    const IntersectionRecord* best = nullptr;
    double best_d = within;
    for (const auto& r : records) {
        const double d = distance(r.point, p);
        if (d <= best_d) {
            best_d = d;
            best = &r;
        }
    }
    return best;
}

// Point at distance rho from x along the curve, walking from param p
// backwards (incoming) or forwards. Gives up after max_steps segments.
bool walk_to_radius(const Curve& curve, double p, Vec2 x, double rho, bool backwards, std::size_t max_steps,
                    Vec2& out) {
    const std::size_t n = curve.size();
    std::size_t seg = curve.segment_at(p);
    Vec2 near = curve.point_at(p);
    for (std::size_t step = 0; step < max_steps; ++step) {
        const Vec2 far = backwards ? curve.segment_start(seg) : curve.segment_end(seg);
        if (distance(far, x) >= rho) {
            // Solve |near + t (far - near) - x| = rho for t in [0, 1].
            const Vec2 d = far - near, w = near - x;
            const double a = dot(d, d), b = 2.0 * dot(d, w), c = dot(w, w) - rho * rho;
            const double disc = std::max(0.0, b * b - 4.0 * a * c);
            double t = (-b + std::sqrt(disc)) / (2.0 * a);
            t = std::clamp(t, 0.0, 1.0);
            out = near + d * t;
            return true;
        }
        near = far;
        seg = backwards ? (seg + n - 1) % n : (seg + 1) % n;
    }
    return false;
}

double angle_of(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kTwoPi;
    return a;
}

}  // namespace

std::size_t topological_components(const std::vector<IntersectionRecord>& records) {
    std::size_t c = 2;
    for (const auto& r : records) c += static_cast<std::size_t>(r.order - 1);
    return c;
}

NegativeRegion negative_region(const Curve& curve, std::size_t resolution) {
    NegativeRegion out{index_map(curve, resolution), {}};
    const IndexMap& map = out.map;
    if (map.unbounded >= 0 && map.component_index[static_cast<std::size_t>(map.unbounded)] < 0) {
        throw Error(ErrorCode::UnboundedNegative, "the unbounded component has negative index");
    }
    for (std::size_t k = 0; k < map.component_count(); ++k) {
        if (map.component_index[k] < 0) out.components.push_back(static_cast<int>(k));
    }
    return out;
}

double snap_radius(const Curve& curve) { return std::max(4.0 * curve.eps_geo(), 2.0 * curve.spacing()); }

LeftExtremity left_extremity(const Curve& curve, const std::vector<int>& region, const IndexMap& map,
                             const std::vector<IntersectionRecord>& records) {
    if (region.empty()) throw Error(ErrorCode::InvalidInput, "left_extremity needs a non-empty region");
    const std::size_t nx = map.nx, ny = map.ny;
    std::vector<char> negative(nx * ny, 0), near(nx * ny, 0);
    for (std::size_t c = 0; c < nx * ny; ++c) {
        const int comp = map.component[c];
        if (comp >= 0 && std::find(region.begin(), region.end(), comp) != region.end()) negative[c] = 1;
    }
    constexpr std::size_t reach = 2;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            if (!negative[map.id(i, j)]) continue;
            for (std::size_t jj = j >= reach ? j - reach : 0; jj <= std::min(ny - 1, j + reach); ++jj) {
                for (std::size_t ii = i >= reach ? i - reach : 0; ii <= std::min(nx - 1, i + reach); ++ii) {
                    near[map.id(ii, jj)] = 1;
                }
            }
        }
    }
    auto in_near = [&](Vec2 p) {
        const double fi = std::floor((p.x - map.origin.x) / map.cell), fj = std::floor((p.y - map.origin.y) / map.cell);
        if (fi < 0 || fj < 0 || fi >= static_cast<double>(nx) || fj >= static_cast<double>(ny)) return false;
        return near[map.id(static_cast<std::size_t>(fi), static_cast<std::size_t>(fj))] != 0;
    };

    std::vector<Vec2> candidates;
    for (const Vec2& v : curve.vertices()) {
        if (in_near(v)) candidates.push_back(v);
    }
    for (const auto& r : records) {
        if (in_near(r.point)) candidates.push_back(r.point);
    }
    std::sort(candidates.begin(), candidates.end(), lex_less);

    const double snap = snap_radius(curve);
    const double tie = 4.0 * curve.eps_geo();
    const double ring = 0.5 * curve.spacing();
    std::vector<Vec2> hits;
    double best_x = INFINITY;
    for (const Vec2& c : candidates) {
        if (c.x > best_x + snap + tie) break;
        if (!borders_negative(curve, c, ring)) continue;
        const IntersectionRecord* r = nearest_record(records, c, snap);
        const Vec2 p = r ? r->point : c;
        hits.push_back(p);
        best_x = std::min(best_x, p.x);
    }

    LeftExtremity out;
    if (hits.empty()) {
        // Degenerate region: snap the left edge of its leftmost cell to the curve.
        Vec2 edge{INFINITY, 0.0};
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                if (!negative[map.id(i, j)]) continue;
                const Vec2 e = map.center(i, j) - Vec2{0.5 * map.cell, 0.0};
                if (lex_less(e, edge)) edge = e;
            }
        }
        double best = INFINITY;
        for (std::size_t s = 0; s < curve.size(); ++s) {
            const Vec2 a = curve.segment_start(s), b = curve.segment_end(s);
            const Vec2 ab = b - a;
            const double t = std::clamp(dot(edge - a, ab) / std::max(norm2(ab), 1e-300), 0.0, 1.0);
            const Vec2 q = a + ab * t;
            if (distance(q, edge) < best) {
                best = distance(q, edge);
                out.point = q;
            }
        }
        return out;
    }

    // Among the hits within `tie` of the leftmost abscissa keep the lowest.
    std::vector<Vec2> front;
    for (const Vec2& h : hits) {
        if (h.x - best_x > tie) continue;
        const bool seen = std::any_of(front.begin(), front.end(), [&](Vec2 f) { return distance(f, h) <= tie; });
        if (!seen) front.push_back(h);
    }
    std::sort(front.begin(), front.end(), [](Vec2 a, Vec2 b) { return a.y < b.y || (a.y == b.y && a.x < b.x); });
    out.point = front[0];
    if (front.size() > 1) {
        out.tie = true;
        out.tied_with = front[1];
    }
    return out;
}

IntersectionRecord assert_self_intersection(const Curve& curve, Vec2 x, const std::vector<IntersectionRecord>& records) {
    const double snap = snap_radius(curve);
    if (const IntersectionRecord* r = nearest_record(records, x, snap)) return *r;
    for (const Singularity& s : singularities_of(curve)) {
        if (distance(s.point, x) <= snap) {
            throw Error(ErrorCode::BadSingularity, "leftmost point " + describe(x) + " is a corner but not a crossing");
        }
    }
    throw Error(ErrorCode::RegularLeftmost,
                "leftmost point " + describe(x) + " of the negative region is a regular point of the curve");
}

Sector least_index_sector(const Curve& curve, const IntersectionRecord& record,
                          const std::vector<IntersectionRecord>& records) {
    const Vec2 x = record.point;
    const std::size_t n = curve.size();
    const double floor_r = 2.0 * curve.spacing();
    double r = 8.0 * curve.spacing();
    const std::size_t m = record.params.size();

    for (int attempt = 0; attempt < kSectorAttempts; ++attempt) {
        if (attempt > 0) r = std::max(0.5 * r, floor_r);

        bool crowded = false;
        for (const auto& other : records) {
            const double d = distance(other.point, x);
            if (d > 4.0 * curve.eps_geo() && d < r) crowded = true;
        }
        if (crowded) continue;

        // Contiguous runs of segments meeting the disk, one per branch.
        std::vector<char> inside(n);
        for (std::size_t i = 0; i < n; ++i) {
            inside[i] = point_segment_distance(x, curve.segment_start(i), curve.segment_end(i)) < r;
        }
        std::size_t runs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (inside[i] && !inside[(i + n - 1) % n]) ++runs;
        }
        if (runs != m) continue;

        const double rho = 0.5 * r;
        const std::size_t max_steps = n / 2;
        Sector sector;
        sector.x = x;
        sector.radius = r;
        sector.probe_radius = rho;
        bool ok = true;
        for (std::size_t k = 0; k < m && ok; ++k) {
            Vec2 before, after;
            ok = walk_to_radius(curve, record.params[k], x, rho, true, max_steps, before) &&
                 walk_to_radius(curve, record.params[k], x, rho, false, max_steps, after);
            if (!ok) break;
            sector.ends.push_back({angle_of(before - x), true, k});
            sector.ends.push_back({angle_of(after - x), false, k});
        }
        if (!ok) continue;
        std::sort(sector.ends.begin(), sector.ends.end(), [](const ArcEnd& a, const ArcEnd& b) { return a.angle < b.angle; });

        const std::size_t ends = sector.ends.size();
        bool probes_ok = true;
        for (std::size_t k = 0; k < ends && probes_ok; ++k) {
            const double a0 = sector.ends[k].angle;
            double a1 = sector.ends[(k + 1) % ends].angle;
            if (k + 1 == ends) a1 += kTwoPi;
            if (a1 - a0 <= 1e-12) {
                probes_ok = false;
                break;
            }
            const double mid = 0.5 * (a0 + a1);
            try {
                sector.indices.push_back(winding_number(curve, x + Vec2{std::cos(mid), std::sin(mid)} * rho));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::OnCurve) throw;
                probes_ok = false;
            }
        }
        if (!probes_ok) continue;

        sector.chosen = static_cast<std::size_t>(
            std::min_element(sector.indices.begin(), sector.indices.end()) - sector.indices.begin());
        sector.least_index = sector.indices[sector.chosen];
        const ArcEnd& lower = sector.ends[sector.chosen];
        const ArcEnd& upper = sector.ends[(sector.chosen + 1) % ends];
        if (!lower.incoming || upper.incoming) {
            throw Error(ErrorCode::BadSector, "least-index sector at " + describe(x) +
                                                  " is not bounded by an incoming then an outgoing arc");
        }
        if (lower.branch == upper.branch) {
            throw Error(ErrorCode::BadSector, "least-index sector at " + describe(x) + " is bounded by a single branch");
        }
        sector.s1 = record.params[lower.branch];
        sector.s2 = record.params[upper.branch];
        if (curve.near_corner(sector.s1) || curve.near_corner(sector.s2)) {
            throw Error(ErrorCode::BadSector, "least-index sector at " + describe(x) + " is edged by a corner");
        }
        return sector;
    }
    throw Error(ErrorCode::ProbeFailed, "no usable disk around " + describe(x) + " after " +
                                            std::to_string(kSectorAttempts) + " attempts");
}

Curve cut(const Curve& curve, const IntersectionRecord& record, const Sector& sector, Vec2 e, CutTrace& trace) {
    const Vec2 x = record.point;
    const double L = curve.length();
    const double s1 = curve.wrap(sector.s1), s2 = curve.wrap(sector.s2);
    if (curve.param_distance(s1, s2) <= curve.eps_param()) {
        throw Error(ErrorCode::BadSector, "cut parameters coincide");
    }
    auto forward = [&](double from, double to) {
        double d = to - from;
        if (d < 0.0) d += L;
        return d;
    };

    // Start the parametrization inside the discarded arc ]s2, s1[, at the
    // vertex farthest from x, so that s1 < s2 afterwards.
    const double removed = forward(s2, s1);
    std::size_t start = curve.size();
    double farthest = -1.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double f = forward(s2, curve.param_of_vertex(i));
        if (f <= 0.0 || f >= removed) continue;
        const double d = distance(curve.vertex(i), x);
        if (d > farthest) {
            farthest = d;
            start = i;
        }
    }
    if (start == curve.size()) throw Error(ErrorCode::InvariantViolated, "discarded arc holds no vertex");
    const double base = curve.param_of_vertex(start);
    const Curve rebased = curve.rebased(start);
    const double r1 = forward(base, s1), r2 = forward(base, s2);

    const double drop = std::max(curve.eps_geo(), 1e-3 * curve.spacing());
    std::vector<Vec2> vertices{x};
    std::vector<std::size_t> corners{0};
    for (std::size_t i = 0; i < rebased.size(); ++i) {
        const double p = rebased.param_of_vertex(i);
        if (p <= r1 || p >= r2) continue;
        if (distance(rebased.vertex(i), x) <= drop) continue;
        if (rebased.is_corner_vertex(i)) corners.push_back(vertices.size());
        vertices.push_back(rebased.vertex(i));
    }
    if (vertices.size() < 3) throw Error(ErrorCode::DegenerateCurve, "cut loop has fewer than 3 vertices");
    const Curve loop(std::move(vertices), std::move(corners));

    Singularity fresh;
    fresh.param = 0.0;
    fresh.point = x;
    fresh.t_minus = loop.segment_direction(loop.size() - 1);
    fresh.t_plus = loop.segment_direction(0);
    fresh.delta_t = fresh.t_minus - fresh.t_plus;

    trace.chosen_point = x;
    trace.s1 = s1;
    trace.s2 = s2;
    trace.sector_index = sector.least_index;
    const ArcEnd& lower = sector.ends[sector.chosen];
    const ArcEnd& upper = sector.ends[(sector.chosen + 1) % sector.ends.size()];
    trace.sector_in = {std::cos(lower.angle), std::sin(lower.angle)};
    trace.sector_out = {std::cos(upper.angle), std::sin(upper.angle)};
    trace.new_singularity = fresh;
    trace.vertices_before = curve.size();
    trace.vertices_after = loop.size();

    if (!is_well_oriented(fresh, e)) {
        throw Error(ErrorCode::IllOrientedCut,
                    "corner created at " + describe(x) + " is not well-oriented: <t-, e> = " +
                        std::to_string(dot(fresh.t_minus, e)) + ", <t+, e> = " + std::to_string(dot(fresh.t_plus, e)));
    }
    trace.scale = kTwoPi / loop.length();
    return loop.scaled_about(x, trace.scale);
}

RunResult run(const Curve& curve, const RunOptions& options) {
    const Vec2 e = normalized(options.direction);
    if (!(norm(e) > 0.0)) throw Error(ErrorCode::InvalidInput, "direction must be non-zero");
    const double angle = -std::atan2(e.y, e.x);
    const Vec2 ex{1.0, 0.0};

    Curve work = curve.rotated(angle);
    auto records = self_intersections(work);
    RunResult result{curve, {}, {}, topological_components(records), positively_curved(work)};
    const std::size_t max_iter = options.max_iter.value_or(result.initial_components);

    for (std::size_t iteration = 0;; ++iteration) {
        const NegativeRegion neg = negative_region(work, options.resolution);
        if (neg.components.empty()) break;
        if (iteration >= max_iter) {
            throw Error(ErrorCode::MaxIterExceeded, "negative region persists after " + std::to_string(iteration) +
                                                        " cuts");
        }
        CutTrace trace;
        trace.iteration = iteration + 1;
        trace.omega_components = neg.components;
        for (int c : neg.components) trace.omega_indices.push_back(neg.map.component_index[static_cast<std::size_t>(c)]);
        trace.components_before = topological_components(records);

        const LeftExtremity ext = left_extremity(work, neg.components, neg.map, records);
        trace.tie = ext.tie;
        const IntersectionRecord record = assert_self_intersection(work, ext.point, records);
        const Sector sector = least_index_sector(work, record, records);
        Curve next = cut(work, record, sector, ex, trace);

        auto next_records = self_intersections(next);
        trace.components_after = topological_components(next_records);
        if (trace.components_after >= trace.components_before) {
            throw Error(ErrorCode::InvariantViolated, "component count did not decrease");
        }

        trace.chosen_point = rotated(trace.chosen_point, -angle);
        trace.sector_in = rotated(trace.sector_in, -angle);
        trace.sector_out = rotated(trace.sector_out, -angle);
        Singularity& s = trace.new_singularity;
        s.point = rotated(s.point, -angle);
        s.t_minus = rotated(s.t_minus, -angle);
        s.t_plus = rotated(s.t_plus, -angle);
        s.delta_t = rotated(s.delta_t, -angle);
        result.traces.push_back(trace);
        result.steps.push_back(next.rotated(-angle));

        work = std::move(next);
        records = std::move(next_records);
    }

    const auto sings = singularities_of(work);
    for (const Singularity& s : sings) {
        if (!is_well_oriented(s, ex)) {
            throw Error(ErrorCode::InvariantViolated, "a retained corner is not well-oriented");
        }
    }
    result.singularities = sings.size();
    result.tangent_sum = tangent_sum(work, ex);
    result.own_boundary = own_curvature_boundary(work, ex);
    result.certificate = !sings.empty() && result.tangent_sum > 0.0 && result.own_boundary < 0.0;
    result.final_curve = result.traces.empty() ? curve : work.rotated(-angle);
    return result;
}

}  // namespace windex
