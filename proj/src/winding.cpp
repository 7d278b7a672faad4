#include "windex/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "windex/error.hpp"
#include "windex/intersections.hpp"

namespace windex {

namespace {

constexpr double kFirstRayAngle = 0.3;
constexpr double kGoldenAngle = 2.399963229728653;
constexpr int kRayAttempts = 16;

void require_off_curve(const Curve& curve, Vec2 point) {
    const double d = distance_to_curve(curve, point);
    if (d <= curve.eps_geo()) {
        throw Error(ErrorCode::OnCurve, "point lies on the curve (distance " + std::to_string(d) + ")");
    }
}

// Signed crossings of the ray from the origin along +x, half-open in y.
// Sets `degenerate` when a vertex sits within tol of the ray.
int ray_crossings(const std::vector<Vec2>& q, double tol, bool& degenerate) {
    const std::size_t n = q.size();
    int w = 0;
    degenerate = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = q[i], b = q[(i + 1) % n];
        if (std::fabs(a.y) <= tol && a.x > -tol) degenerate = true;
        if (a.y <= 0.0 && b.y > 0.0) {
            if (cross(b - a, -a) > 0.0) ++w;
        } else if (a.y > 0.0 && b.y <= 0.0) {
            if (cross(b - a, -a) < 0.0) --w;
        }
    }
    return w;
}

bool proper_cross(Vec2 p, Vec2 q, Vec2 a, Vec2 b) {
    const double d1 = cross(q - p, a - p), d2 = cross(q - p, b - p);
    const double d3 = cross(b - a, p - a), d4 = cross(b - a, q - a);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Cells within this many cells of each other may be bridged across the band.
constexpr std::size_t kBridgeReach = 3;

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

// 4-connected labelling of the known cells. The band can pinch a region into
// pieces near a crossing, so afterwards pieces with equal index are joined
// when the straight path between two of their cells misses every curve
// segment; such cells lie in the same component of the complement.
void label_components(const Curve& curve, IndexMap& map, const std::vector<std::vector<std::uint32_t>>& buckets) {
    const std::size_t nx = map.nx, ny = map.ny, cells = nx * ny;
    const int unknown = IndexMap::kUnknown;
    std::vector<std::size_t> parent(cells);
    for (std::size_t c = 0; c < cells; ++c) parent[c] = c;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t c = map.id(i, j);
            if (map.index[c] == unknown) continue;
            if (i + 1 < nx && map.index[c + 1] != unknown) parent[find_root(parent, c)] = find_root(parent, c + 1);
            if (j + 1 < ny && map.index[c + nx] != unknown) parent[find_root(parent, c)] = find_root(parent, c + nx);
        }
    }

    auto blocked = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        const Vec2 p = map.center(i0, j0), q = map.center(i1, j1);
        const double eps = curve.eps_geo();
        for (std::size_t j = std::min(j0, j1); j <= std::max(j0, j1); ++j) {
            for (std::size_t i = std::min(i0, i1); i <= std::max(i0, i1); ++i) {
                for (std::uint32_t s : buckets[map.id(i, j)]) {
                    const Vec2 a = curve.segment_start(s), b = curve.segment_end(s);
                    if (proper_cross(p, q, a, b) || point_segment_distance(a, p, q) <= eps ||
                        point_segment_distance(b, p, q) <= eps) {
                        return true;
                    }
                }
            }
        }
        return false;
    };

    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t c = map.id(i, j);
            if (map.index[c] == unknown) continue;
            const bool edge = (i > 0 && map.index[c - 1] == unknown) || (i + 1 < nx && map.index[c + 1] == unknown) ||
                              (j > 0 && map.index[c - nx] == unknown) || (j + 1 < ny && map.index[c + nx] == unknown);
            if (!edge) continue;
            const std::size_t i_lo = i >= kBridgeReach ? i - kBridgeReach : 0;
            const std::size_t j_lo = j >= kBridgeReach ? j - kBridgeReach : 0;
            for (std::size_t jj = j_lo; jj <= std::min(ny - 1, j + kBridgeReach); ++jj) {
                for (std::size_t ii = i_lo; ii <= std::min(nx - 1, i + kBridgeReach); ++ii) {
                    const std::size_t d = map.id(ii, jj);
                    if (map.index[d] != map.index[c]) continue;
                    if (find_root(parent, c) == find_root(parent, d)) continue;
                    if (!blocked(i, j, ii, jj)) parent[find_root(parent, c)] = find_root(parent, d);
                }
            }
        }
    }

    map.component.assign(cells, -1);
    std::vector<int> label_of_root(cells, -1);
    for (std::size_t c = 0; c < cells; ++c) {
        if (map.index[c] == unknown) continue;
        const std::size_t r = find_root(parent, c);
        if (label_of_root[r] < 0) {
            label_of_root[r] = static_cast<int>(map.component_index.size());
            map.component_index.push_back(map.index[c]);
            map.component_cells.push_back(0);
        }
        const int label = label_of_root[r];
        map.component[c] = label;
        ++map.component_cells[static_cast<std::size_t>(label)];
        if (map.index[c] != map.component_index[static_cast<std::size_t>(label)]) map.index_constant = false;
        const std::size_t i = c % nx, j = c / nx;
        if (map.unbounded < 0 && (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny)) map.unbounded = label;
    }
}

}  // namespace

double distance_to_curve(const Curve& curve, Vec2 point) {
    double best = INFINITY;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        best = std::min(best, point_segment_distance(point, curve.segment_start(i), curve.segment_end(i)));
    }
    return best;
}

int winding_number(const Curve& curve, Vec2 point) {
    require_off_curve(curve, point);
    const std::size_t n = curve.size();
    std::vector<Vec2> q(n);
    int result = 0;
    for (int k = 0; k < kRayAttempts; ++k) {
        const double angle = kFirstRayAngle + kGoldenAngle * k;
        for (std::size_t i = 0; i < n; ++i) q[i] = rotated(curve.vertex(i) - point, -angle);
        bool degenerate = false;
        result = ray_crossings(q, curve.eps_geo(), degenerate);
        if (!degenerate) break;
    }
    return result;
}

int winding_number_by_angle(const Curve& curve, Vec2 point) {
    require_off_curve(curve, point);
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec2 a = curve.segment_start(i) - point, b = curve.segment_end(i) - point;
        total += std::atan2(cross(a, b), dot(a, b));
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

ScanlineWinding::ScanlineWinding(const Curve& curve, double y0, double dy, std::size_t rows)
    : y0_(y0), dy_(dy), offset_(rows + 1, 0) {
    const std::size_t n = curve.size();
    auto row_range = [&](Vec2 a, Vec2 b, std::size_t& first, std::size_t& last) {
        const double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
        const double f = std::floor((lo - y0_) / dy_ - 0.5);
        const double l = std::ceil((hi - y0_) / dy_ - 0.5);
        first = static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(rows)));
        last = static_cast<std::size_t>(std::clamp(l + 1.0, 0.0, static_cast<double>(rows)));
    };
    auto crosses = [](Vec2 a, Vec2 b, double y) { return (a.y <= y && b.y > y) || (a.y > y && b.y <= y); };

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve.segment_start(i), b = curve.segment_end(i);
        std::size_t first = 0, last = 0;
        row_range(a, b, first, last);
        for (std::size_t r = first; r < last; ++r) {
            if (crosses(a, b, row_y(r))) ++offset_[r + 1];
        }
    }
    for (std::size_t r = 0; r < rows; ++r) offset_[r + 1] += offset_[r];
    xs_.resize(offset_[rows]);
    std::vector<int> signs(offset_[rows]);
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve.segment_start(i), b = curve.segment_end(i);
        std::size_t first = 0, last = 0;
        row_range(a, b, first, last);
        for (std::size_t r = first; r < last; ++r) {
            const double y = row_y(r);
            if (!crosses(a, b, y)) continue;
            const std::size_t k = fill[r]++;
            xs_[k] = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
            signs[k] = b.y > a.y ? 1 : -1;
        }
    }
    suffix_.resize(xs_.size());
    std::vector<std::size_t> order;
    std::vector<double> xs_row;
    std::vector<int> sign_row;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t b = offset_[r], e = offset_[r + 1];
        order.resize(e - b);
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = b + k;
        std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return xs_[u] < xs_[v]; });
        xs_row.clear();
        sign_row.clear();
        for (std::size_t k : order) {
            xs_row.push_back(xs_[k]);
            sign_row.push_back(signs[k]);
        }
        int acc = 0;
        for (std::size_t k = order.size(); k-- > 0;) {
            acc += sign_row[k];
            xs_[b + k] = xs_row[k];
            suffix_[b + k] = acc;
        }
    }
}

int ScanlineWinding::at(std::size_t r, double x) const {
    const auto b = xs_.begin() + static_cast<std::ptrdiff_t>(offset_[r]);
    const auto e = xs_.begin() + static_cast<std::ptrdiff_t>(offset_[r + 1]);
    const auto it = std::upper_bound(b, e, x);
    return it == e ? 0 : suffix_[static_cast<std::size_t>(it - xs_.begin())];
}

void ScanlineWinding::fill_row(std::size_t r, double x0, double dx, std::size_t count, int* out) const {
    std::size_t k = offset_[r];
    const std::size_t e = offset_[r + 1];
    for (std::size_t c = 0; c < count; ++c) {
        const double x = x0 + (static_cast<double>(c) + 0.5) * dx;
        while (k < e && xs_[k] <= x) ++k;
        out[c] = k == e ? 0 : suffix_[k];
    }
}

int IndexMap::min_index() const {
    int m = 0;
    for (int v : component_index) m = std::min(m, v);
    return m;
}

int IndexMap::max_index() const {
    int m = 0;
    for (int v : component_index) m = std::max(m, v);
    return m;
}

IndexMap index_map(const Curve& curve, std::size_t resolution, double padding) {
    if (resolution < 16) throw Error(ErrorCode::InvalidInput, "index map resolution must be at least 16");
    if (!(padding >= 0.0)) throw Error(ErrorCode::InvalidInput, "padding must be non-negative");
    const BBox& box = curve.bbox();
    const double side = std::max(box.width(), box.height());
    const double pad = padding * side;
    const double span = side + 2.0 * pad;

    IndexMap map;
    map.cell = span / static_cast<double>(resolution);
    map.nx = static_cast<std::size_t>(std::ceil((box.width() + 2.0 * pad) / map.cell - 1e-9));
    map.ny = static_cast<std::size_t>(std::ceil((box.height() + 2.0 * pad) / map.cell - 1e-9));
    map.nx = std::max<std::size_t>(map.nx, 1);
    map.ny = std::max<std::size_t>(map.ny, 1);
    const Vec2 mid = (box.lo + box.hi) * 0.5;
    map.origin = mid - Vec2{0.5 * map.cell * static_cast<double>(map.nx), 0.5 * map.cell * static_cast<double>(map.ny)};

    const std::size_t nx = map.nx, ny = map.ny;
    std::vector<char> unknown(nx * ny, 0);
    std::vector<std::vector<std::uint32_t>> buckets(nx * ny);
    const double band = 0.5 * std::sqrt(2.0) * map.cell;
    for (std::size_t s = 0; s < curve.size(); ++s) {
        const Vec2 a = curve.segment_start(s), b = curve.segment_end(s);
        const double x0 = std::min(a.x, b.x) - band, x1 = std::max(a.x, b.x) + band;
        const double y0 = std::min(a.y, b.y) - band, y1 = std::max(a.y, b.y) + band;
        auto cell_of = [&](double v, double o, std::size_t n) {
            return static_cast<std::size_t>(std::clamp(std::floor((v - o) / map.cell), 0.0, static_cast<double>(n - 1)));
        };
        const std::size_t i0 = cell_of(x0, map.origin.x, nx), i1 = cell_of(x1, map.origin.x, nx);
        const std::size_t j0 = cell_of(y0, map.origin.y, ny), j1 = cell_of(y1, map.origin.y, ny);
        for (std::size_t j = j0; j <= j1; ++j) {
            for (std::size_t i = i0; i <= i1; ++i) {
                const std::size_t id = map.id(i, j);
                if (point_segment_distance(map.center(i, j), a, b) <= band) {
                    unknown[id] = 1;
                    buckets[id].push_back(static_cast<std::uint32_t>(s));
                }
            }
        }
    }

    map.index.assign(nx * ny, 0);
    const ScanlineWinding scan(curve, map.origin.y, map.cell, ny);
    for (std::size_t j = 0; j < ny; ++j) {
        int* row = map.index.data() + j * nx;
        scan.fill_row(j, map.origin.x, map.cell, nx, row);
        for (std::size_t i = 0; i < nx; ++i) {
            if (unknown[j * nx + i]) row[i] = IndexMap::kUnknown;
        }
    }

    label_components(curve, map, buckets);
    return map;
}

IndexJumpReport verify_index_jump(const Curve& curve, std::size_t trials, std::uint64_t seed) {
    const auto records = self_intersections(curve);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, curve.length());
    const double delta = 0.25 * curve.spacing();
    const std::size_t max_draws = 100 * std::max<std::size_t>(trials, 1);

    IndexJumpReport report;
    std::size_t draws = 0;
    while (report.trials < trials) {
        if (++draws > max_draws) {
            if (report.trials == 0) throw Error(ErrorCode::NoRegularPoint, "no regular point found");
            break;
        }
        const double s = uniform(rng);
        double f = 0.0;
        const std::size_t seg = curve.segment_at(s, &f);
        if (f < 0.05 || f > 0.95 || !std::holds_alternative<Regular>(classify_point(curve, s, records))) {
            ++report.skipped_nonregular;
            continue;
        }
        ++report.trials;
        const FrameSample frame = frame_at(curve, s);
        const Vec2 u = frame.point + frame.normal * delta;
        const Vec2 v = frame.point - frame.normal * delta;

        bool straddles = false;
        for (std::size_t k = 0; k < curve.size() && !straddles; ++k) {
            if (k == seg) continue;
            const Vec2 a = curve.segment_start(k), b = curve.segment_end(k);
            straddles = proper_cross(u, v, a, b) || point_segment_distance(u, a, b) <= curve.eps_geo() ||
                        point_segment_distance(v, a, b) <= curve.eps_geo();
        }
        IndexJumpFailure probe{s, frame.point, 0, 0};
        if (straddles) {
            ++report.band;
            report.band_probes.push_back(probe);
            continue;
        }
        probe.inside = winding_number(curve, u);
        probe.outside = winding_number(curve, v);
        if (probe.inside - probe.outside == 1) ++report.passed;
        else report.failures.push_back(probe);
    }
    return report;
}

}  // namespace windex
