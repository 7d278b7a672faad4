#include "windex/prescribed_ode.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "windex/error.hpp"
#include "windex/generators.hpp"

namespace windex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct State {
    Vec2 p;
    Vec2 t;
};

double checked(const ScalarField& H, Vec2 p) {
    const double v = H(p);
    if (!(std::fabs(v) <= kFieldLimit)) {
        throw Error(ErrorCode::FieldBlowup, "|H| = " + std::to_string(v) + " at (" + std::to_string(p.x) + ", " +
                                                std::to_string(p.y) + ")");
    }
    return v;
}

State rk4(const ScalarField& H, const State& s, double h) {
    auto deriv = [&](const State& y) { return State{y.t, rot90(y.t) * checked(H, y.p)}; };
    const State k1 = deriv(s);
    const State k2 = deriv({s.p + k1.p * (0.5 * h), s.t + k1.t * (0.5 * h)});
    const State k3 = deriv({s.p + k2.p * (0.5 * h), s.t + k2.t * (0.5 * h)});
    const State k4 = deriv({s.p + k3.p * h, s.t + k3.t * h});
    State out;
    out.p = s.p + (k1.p + k2.p * 2.0 + k3.p * 2.0 + k4.p) * (h / 6.0);
    out.t = normalized(s.t + (k1.t + k2.t * 2.0 + k3.t * 2.0 + k4.t) * (h / 6.0));
    return out;
}

double c_formula(double a, double x1) {
    const double sign = x1 > 0.0 ? 1.0 : (x1 < 0.0 ? -1.0 : 0.0);
    const double inner = (a * std::sqrt(8.0 * x1 * x1 + a * a) - a * a) / 2.0;
    return sign * (3.0 / (a * a)) * std::sqrt(std::max(inner, 0.0));
}

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

ShotResult integrate(const ScalarField& H, Vec2 start, Vec2 tangent, double max_length, double step,
                     bool keep_trajectory) {
    if (!(step > 0.0) || !(max_length > 0.0)) throw Error(ErrorCode::InvalidInput, "step and max_length must be positive");
    if (!(norm(tangent) > 0.0)) throw Error(ErrorCode::InvalidInput, "start tangent must be non-zero");
    ShotResult out;
    out.start_point = start;
    out.start_tangent = normalized(tangent);
    const Vec2 t0 = out.start_tangent;
    State s{start, t0};
    if (keep_trajectory) out.trajectory.push_back(start);

    const auto total = static_cast<std::size_t>(std::ceil(max_length / step));
    const double near = 10.0 * step;
    double g_prev = 0.0;
    for (std::size_t k = 1; k <= total; ++k) {
        const State prev = s;
        s = rk4(H, s, step);
        out.max_tangent_drift = std::max(out.max_tangent_drift, std::fabs(norm(s.t) - 1.0));
        out.steps = k;
        if (keep_trajectory) out.trajectory.push_back(s.p);

        const double g = dot(s.p - start, s.t);
        const double arc = static_cast<double>(k) * step;
        if (arc > near && g_prev < 0.0 && g >= 0.0 && distance(s.p, start) < near && dot(s.t, t0) > 0.5) {
            double lo = 0.0, hi = step;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const State m = rk4(H, prev, mid);
                (dot(m.p - start, m.t) < 0.0 ? lo : hi) = mid;
            }
            const double sigma = 0.5 * (lo + hi);
            const State hit = rk4(H, prev, sigma);
            out.return_point = hit.p;
            out.return_tangent = hit.t;
            out.return_length = static_cast<double>(k - 1) * step + sigma;
            out.closure_defect = distance(hit.p, start) + distance(hit.t, t0);
            return out;
        }
        g_prev = g;
    }
    return out;
}

double lemniscate_curvature(double a, double x1) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "a must be positive");
    if (std::fabs(x1) > a * (1.0 + 1e-12)) {
        throw Error(ErrorCode::OutOfRange, "|x1| = " + std::to_string(std::fabs(x1)) + " exceeds a = " + std::to_string(a));
    }
    return c_formula(a, x1);
}

ScalarField lemniscate_field(double a) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "a must be positive");
    ScalarField f;
    f.provenance = "lemniscate curvature c(x), a = " + fmt(a);
    f.eval = [a](Vec2 p) { return c_formula(a, p.x); };
    return f;
}

Curve lemniscate_generate(double a, std::size_t n) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "a must be positive");
    auto f = [a](double t) {
        const double s = std::sin(t), c = std::cos(t), d = 1.0 + c * c;
        return Vec2{a * s / d, -a * s * c / d};
    };
    auto df = [a](double t) {
        const double c = std::cos(t), d = 1.0 + c * c;
        return Vec2{a * c * (3.0 - c * c) / (d * d), -a * (3.0 * c * c - 1.0) / (d * d)};
    };
    return sample_by_arclength(f, df, 0.0, kTwoPi, n);
}

AuditReport counterexample_audit(double a, std::size_t samples, std::size_t resolution) {
    AuditReport r;
    r.a = a;
    const Curve curve = lemniscate_generate(a, samples);

    for (const Vec2& v : curve.vertices()) {
        const double lhs = (v.x * v.x + v.y * v.y) * (v.x * v.x + v.y * v.y);
        r.cartesian_residual = std::max(r.cartesian_residual, std::fabs(lhs - a * a * (v.x * v.x - v.y * v.y)) / (a * a * a * a));
    }
    r.cartesian_ok = r.cartesian_residual <= 1e-9;

    r.min_curvature = INFINITY;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double x1 = std::clamp(curve.vertex(i).x, -a, a);
        const double c = lemniscate_curvature(a, x1);
        r.min_curvature = std::min(r.min_curvature, c);
        if (std::fabs(x1) > 0.05 * a) {
            r.curvature_error = std::max(r.curvature_error, std::fabs(vertex_curvature(curve, i) - c));
        }
    }
    r.curvature_ok = r.curvature_error <= 1e-3 / a;
    r.c_at_apex = lemniscate_curvature(a, a);
    r.sign_change = r.min_curvature < 0.0;

    const std::size_t grid = 1000;
    const double h = 1e-6 * a;
    r.min_derivative = INFINITY;
    for (std::size_t k = 0; k < grid; ++k) {
        const double x1 = -a + (static_cast<double>(k) + 0.5) * 2.0 * a / static_cast<double>(grid);
        const double d = (c_formula(a, x1 + h) - c_formula(a, x1 - h)) / (2.0 * h);
        r.min_derivative = std::min(r.min_derivative, d);
    }
    r.derivative_near_zero = (c_formula(a, h) - c_formula(a, -h)) / (2.0 * h);
    r.monotone_ok = r.min_derivative > 0.0;

    r.obstruction = obstruction_functional(curve, lemniscate_field(a), {1.0, 0.0}, resolution);
    r.area_ok = std::fabs(r.obstruction.area_side) <= r.obstruction.area_bound;
    return r;
}

SurveyReport shooting_survey(const ScalarField& H, const SurveyConfig& config) {
    SurveyReport report;
    report.hypothesis = sample_hypothesis(H, config.direction, config.lo, config.hi, 10000, config.seed);
    if (!report.hypothesis.pass) {
        throw Error(ErrorCode::HypothesisViolated,
                    "hypothesis sampling failed: H > 0 at " + std::to_string(report.hypothesis.positive_fraction) +
                        ", <grad H, e> > 0 at " + std::to_string(report.hypothesis.monotone_fraction) + " of samples");
    }
    const double dx = (config.hi.x - config.lo.x) / static_cast<double>(config.starts);
    const double dy = (config.hi.y - config.lo.y) / static_cast<double>(config.starts);
    for (std::size_t i = 0; i < config.starts; ++i) {
        for (std::size_t j = 0; j < config.starts; ++j) {
            const Vec2 start{config.lo.x + (static_cast<double>(i) + 0.5) * dx,
                             config.lo.y + (static_cast<double>(j) + 0.5) * dy};
            for (std::size_t k = 0; k < config.angles; ++k) {
                SurveyRow row;
                row.start = start;
                row.angle = kTwoPi * static_cast<double>(k) / static_cast<double>(config.angles);
                try {
                    const ShotResult shot = integrate(H, start, {std::cos(row.angle), std::sin(row.angle)},
                                                      config.max_length, config.step, false);
                    row.closure_defect = shot.closure_defect;
                    row.return_length = shot.return_length;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::FieldBlowup) throw;
                    row.blowup = true;
                }
                report.min_defect = std::min(report.min_defect, row.closure_defect);
                if (row.closure_defect < config.tolerance) ++report.closures;
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

std::string survey_csv(const SurveyReport& report) {
    std::string out = "start_x,start_y,angle,closure_defect,return_length,blowup\n";
    for (const SurveyRow& r : report.rows) {
        out += fmt(r.start.x) + "," + fmt(r.start.y) + "," + fmt(r.angle) + "," + fmt(r.closure_defect) + "," +
               fmt(r.return_length) + "," + (r.blowup ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace windex
