#include "windex/intersections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "windex/error.hpp"

namespace windex {

namespace {

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
    const std::size_t d = i > j ? i - j : j - i;
    return d <= 1 || d == n - 1;
}

enum class PairResult { None, Touch, Proper };

// Intersects segments i and j. Hits within eps_geo of an endpoint count as
// touches; collinear overlap longer than eps_geo is an error.
PairResult intersect_pair(const Curve& curve, std::size_t i, std::size_t j, SegmentHit& hit) {
    const Vec2 a = curve.segment_start(i), b = curve.segment_end(i);
    const Vec2 c = curve.segment_start(j), d = curve.segment_end(j);
    const double eps = curve.eps_geo();
    const Vec2 r = b - a, s = d - c;
    const double lr = norm(r), ls = norm(s);
    const double den = cross(r, s);
    const Vec2 qp = c - a;

    if (std::fabs(den) <= 1e-14 * lr * ls) {
        if (std::fabs(cross(r, qp)) / lr > eps) return PairResult::None;
        const double t0 = dot(c - a, r) / (lr * lr), t1 = dot(d - a, r) / (lr * lr);
        const double lo = std::max(0.0, std::min(t0, t1)), hi = std::min(1.0, std::max(t0, t1));
        if ((hi - lo) * lr > eps) {
            throw Error(ErrorCode::OverlapDetected, "segments " + std::to_string(i) + " and " + std::to_string(j) +
                                                        " overlap over length " + std::to_string((hi - lo) * lr));
        }
        if ((lo - hi) * lr > eps) return PairResult::None;
        const double t = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
        hit.point = a + r * t;
        hit.t_a = t;
        hit.t_b = std::clamp(dot(hit.point - c, s) / (ls * ls), 0.0, 1.0);
        hit.seg_a = i;
        hit.seg_b = j;
        return PairResult::Touch;
    }

    const double t = cross(qp, s) / den;
    const double u = cross(qp, r) / den;
    const double et = eps / lr, eu = eps / ls;
    if (t < -et || t > 1.0 + et || u < -eu || u > 1.0 + eu) return PairResult::None;
    hit.seg_a = i;
    hit.seg_b = j;
    hit.t_a = std::clamp(t, 0.0, 1.0);
    hit.t_b = std::clamp(u, 0.0, 1.0);
    hit.point = a + r * hit.t_a;
    const bool proper = t > et && t < 1.0 - et && u > eu && u < 1.0 - eu;
    return proper ? PairResult::Proper : PairResult::Touch;
}

// Bentley-Ottmann over the curve's segments. The status is ordered by height
// at the sweep position; crossing events swap neighbours in place, so the
// comparator is only consulted when a segment is inserted.
class Sweep {
public:
    explicit Sweep(const Curve& curve) : curve_(curve), n_(curve.size()), status_(Less{this}) {
        segs_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Vec2 p = curve.segment_start(i), q = curve.segment_end(i);
            if (lex_less(q, p)) std::swap(p, q);
            segs_[i] = {p, q};
        }
        tie_ = 1e-13 * curve.bbox().diameter();
        where_.resize(n_);
        active_.assign(n_, 0);
    }

    std::vector<SegmentHit> run() {
        for (std::size_t i = 0; i < n_; ++i) {
            push({segs_[i].left, kStart, i, i, 0});
            push({segs_[i].right, kEnd, i, i, 0});
        }
        while (!queue_.empty()) {
            const Event e = queue_.top();
            queue_.pop();
            sweep_ = e.p;
            switch (e.kind) {
                case kCross: handle_cross(e); break;
                case kStart: handle_start(e.a); break;
                case kEnd: handle_end(e.a); break;
            }
        }
        return std::move(hits_);
    }

private:
    static constexpr int kCross = 0, kStart = 1, kEnd = 2;

    struct Seg {
        Vec2 left, right;
    };
    struct Event {
        Vec2 p;
        int kind;
        std::size_t a, b;
        int deferrals;
        std::uint64_t seq = 0;
    };
    struct Later {
        bool operator()(const Event& x, const Event& y) const {
            if (x.p.x != y.p.x) return x.p.x > y.p.x;
            if (x.p.y != y.p.y) return x.p.y > y.p.y;
            if (x.kind != y.kind) return x.kind > y.kind;
            return x.seq > y.seq;
        }
    };
    struct Entry {
        mutable std::size_t seg;
    };
    struct Less {
        const Sweep* sweep;
        bool operator()(const Entry& x, const Entry& y) const { return sweep->below(x.seg, y.seg); }
    };
    using Status = std::set<Entry, Less>;

    double height(std::size_t s) const {
        const Seg& g = segs_[s];
        if (g.left.x == g.right.x) return std::clamp(sweep_.y, g.left.y, g.right.y);
        const double x = std::clamp(sweep_.x, g.left.x, g.right.x);
        return g.left.y + (x - g.left.x) * (g.right.y - g.left.y) / (g.right.x - g.left.x);
    }
    double slope(std::size_t s) const {
        const Seg& g = segs_[s];
        if (g.left.x == g.right.x) return INFINITY;
        return (g.right.y - g.left.y) / (g.right.x - g.left.x);
    }
    bool below(std::size_t a, std::size_t b) const {
        if (a == b) return false;
        const double ya = height(a), yb = height(b);
        if (std::fabs(ya - yb) > tie_) return ya < yb;
        const double sa = slope(a), sb = slope(b);
        if (sa != sb) return sa < sb;
        return a < b;
    }

    void push(Event e) {
        e.seq = seq_++;
        queue_.push(e);
    }

    void test(Status::iterator lo, Status::iterator hi) {
        if (lo == status_.end() || hi == status_.end()) return;
        const std::size_t a = lo->seg, b = hi->seg;
        if (adjacent(a, b, n_)) return;
        const auto key = std::minmax(a, b);
        if (!tested_.insert(key.first * n_ + key.second).second) return;
        SegmentHit hit;
        const PairResult r = intersect_pair(curve_, a, b, hit);
        if (r == PairResult::None) return;
        hits_.push_back(hit);
        if (r == PairResult::Proper && lex_less(sweep_, hit.point)) push({hit.point, kCross, a, b, 0});
    }

    void handle_start(std::size_t s) {
        auto [it, inserted] = status_.insert(Entry{s});
        where_[s] = it;
        active_[s] = 1;
        if (it != status_.begin()) test(std::prev(it), it);
        test(it, std::next(it));
    }

    void handle_end(std::size_t s) {
        if (!active_[s]) return;
        auto it = where_[s];
        auto next = std::next(it);
        auto prev = it == status_.begin() ? status_.end() : std::prev(it);
        status_.erase(it);
        active_[s] = 0;
        if (prev != status_.end() && next != status_.end()) test(prev, next);
    }

    void handle_cross(const Event& e) {
        if (!active_[e.a] || !active_[e.b]) return;
        auto ia = where_[e.a], ib = where_[e.b];
        if (std::next(ia) != ib) std::swap(ia, ib);
        if (std::next(ia) != ib) {
            // Not yet neighbours: another swap at the same point is pending.
            if (e.deferrals < 4) {
                Event again = e;
                ++again.deferrals;
                push(again);
            }
            return;
        }
        std::swap(ia->seg, ib->seg);
        where_[ia->seg] = ia;
        where_[ib->seg] = ib;
        if (ia != status_.begin()) test(std::prev(ia), ia);
        test(ib, std::next(ib));
    }

    const Curve& curve_;
    std::size_t n_;
    std::vector<Seg> segs_;
    Vec2 sweep_;
    double tie_ = 0.0;
    Status status_;
    std::vector<Status::iterator> where_;
    std::vector<char> active_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::unordered_set<std::size_t> tested_;
    std::vector<SegmentHit> hits_;
    std::uint64_t seq_ = 0;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

std::vector<SegmentHit> all_pairs_hits(const Curve& curve) {
    const std::size_t n = curve.size();
    std::vector<BBox> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
        boxes[i].expand(curve.segment_start(i));
        boxes[i].expand(curve.segment_end(i));
    }
    const double eps = curve.eps_geo();
    std::vector<SegmentHit> hits;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (adjacent(i, j, n)) continue;
            const BBox& a = boxes[i];
            const BBox& b = boxes[j];
            if (a.hi.x + eps < b.lo.x || b.hi.x + eps < a.lo.x || a.hi.y + eps < b.lo.y || b.hi.y + eps < a.lo.y) continue;
            SegmentHit hit;
            if (intersect_pair(curve, i, j, hit) != PairResult::None) hits.push_back(hit);
        }
    }
    return hits;
}

std::vector<SegmentHit> sweep_hits(const Curve& curve) { return Sweep(curve).run(); }

std::vector<IntersectionRecord> cluster_hits(const Curve& curve, const std::vector<SegmentHit>& hits) {
    const double radius = 4.0 * curve.eps_geo();
    std::vector<std::size_t> order(hits.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hits[a].point.x < hits[b].point.x; });
    std::vector<std::size_t> parent(hits.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const SegmentHit& a = hits[order[i]];
            const SegmentHit& b = hits[order[j]];
            if (b.point.x - a.point.x > radius) break;
            if (distance(a.point, b.point) <= radius) {
                parent[find_root(parent, order[i])] = find_root(parent, order[j]);
            }
        }
    }

    std::vector<std::vector<std::size_t>> groups(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) groups[find_root(parent, i)].push_back(i);

    auto param = [&](std::size_t seg, double t) {
        return curve.wrap(curve.param_of_vertex(seg) + t * curve.segment_length(seg));
    };
    const double sin_ang = std::sin(kEpsAng);

    std::vector<IntersectionRecord> records;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        IntersectionRecord rec;
        std::vector<double> params;
        for (std::size_t h : g) {
            rec.point += hits[h].point;
            params.push_back(param(hits[h].seg_a, hits[h].t_a));
            params.push_back(param(hits[h].seg_b, hits[h].t_b));
        }
        rec.point = rec.point / static_cast<double>(g.size());
        std::sort(params.begin(), params.end());
        for (double p : params) {
            if (rec.params.empty() || curve.param_distance(p, rec.params.back()) > curve.eps_param()) {
                rec.params.push_back(p);
            }
        }
        if (rec.params.size() > 1 && curve.param_distance(rec.params.front(), rec.params.back()) <= curve.eps_param()) {
            rec.params.pop_back();
        }
        rec.order = static_cast<int>(rec.params.size());
        if (rec.order < 2) continue;
        for (std::size_t i = 0; i < rec.params.size() && !rec.tangential; ++i) {
            for (std::size_t j = i + 1; j < rec.params.size(); ++j) {
                const Vec2 ti = branch_tangent(curve, rec.params[i]);
                const Vec2 tj = branch_tangent(curve, rec.params[j]);
                if (std::fabs(cross(ti, tj)) < sin_ang) {
                    rec.tangential = true;
                    break;
                }
            }
        }
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const IntersectionRecord& a, const IntersectionRecord& b) { return lex_less(a.point, b.point); });
    return records;
}

std::vector<IntersectionRecord> self_intersections(const Curve& curve) {
    const auto hits = curve.size() < kSweepThreshold ? all_pairs_hits(curve) : sweep_hits(curve);
    return cluster_hits(curve, hits);
}

Vec2 branch_tangent(const Curve& curve, double param) {
    double f = 0.0;
    const std::size_t seg = curve.segment_at(param, &f);
    const double len = curve.segment_length(seg);
    const double tol = 1e-9 * curve.spacing();
    std::size_t vertex = curve.size();
    if (f * len <= tol) vertex = seg;
    else if ((1.0 - f) * len <= tol) vertex = seg + 1;
    if (vertex == curve.size() || curve.is_corner_vertex(vertex)) return curve.segment_direction(seg);
    return normalized(curve.vertex(vertex + 1) - curve.vertex(vertex + curve.size() - 1));
}

PointClass classify_point(const Curve& curve, double param) {
    return classify_point(curve, param, self_intersections(curve));
}

PointClass classify_point(const Curve& curve, double param, const std::vector<IntersectionRecord>& records) {
    if (curve.near_corner(param)) {
        for (const Singularity& s : singularities_of(curve)) {
            if (curve.param_distance(s.param, param) <= curve.eps_param()) return CornerPoint{s};
        }
    }
    for (const IntersectionRecord& r : records) {
        for (double p : r.params) {
            if (curve.param_distance(p, param) <= curve.eps_param()) return SelfIntersectionPoint{r};
        }
    }
    return Regular{};
}

bool tangential_orientation_check(const IntersectionRecord& record, const Curve& curve) {
    if (!record.tangential) throw Error(ErrorCode::NotTangential, "record is a transversal crossing");
    const double sin_ang = std::sin(kEpsAng);
    for (std::size_t i = 0; i < record.params.size(); ++i) {
        for (std::size_t j = i + 1; j < record.params.size(); ++j) {
            const Vec2 ti = branch_tangent(curve, record.params[i]);
            const Vec2 tj = branch_tangent(curve, record.params[j]);
            if (std::fabs(cross(ti, tj)) < sin_ang && dot(ti, tj) > 0.0) return false;
        }
    }
    return true;
}

}  // namespace windex
