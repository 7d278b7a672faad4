#include "windex/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "windex/error.hpp"
#include "windex/intersections.hpp"
#include "windex/winding.hpp"

namespace windex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                               0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                 0.4786286704993665, 0.2369268850561891};

double speed_integral(const std::function<Vec2(double)>& df, double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) sum += kGaussWeights[k] * norm(df(mid + half * kGaussNodes[k]));
    return sum * half;
}

Vec2 from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

}  // namespace

Curve circle_curve(std::size_t n, double radius, Vec2 center, bool ccw, int turns) {
    std::vector<Vec2> v(n);
    const double sign = ccw ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double th = kTwoPi * turns * static_cast<double>(k) / static_cast<double>(n);
        v[k] = center + Vec2{radius * std::cos(th), sign * radius * std::sin(th)};
    }
    return Curve(std::move(v));
}

Curve square_curve(double side, std::size_t points_per_side) {
    const std::array<Vec2, 4> c = {Vec2{0, 0}, Vec2{side, 0}, Vec2{side, side}, Vec2{0, side}};
    std::vector<Vec2> v;
    std::vector<std::size_t> corners;
    for (std::size_t e = 0; e < 4; ++e) {
        corners.push_back(v.size());
        for (std::size_t k = 0; k < points_per_side; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(points_per_side);
            v.push_back(c[e] + (c[(e + 1) % 4] - c[e]) * f);
        }
    }
    return Curve(std::move(v), std::move(corners));
}

Curve sample_by_arclength(const std::function<Vec2(double)>& f, const std::function<Vec2(double)>& df, double t0,
                          double t1, std::size_t n) {
    if (n < 3) throw Error(ErrorCode::DegenerateCurve, "need at least 3 samples");
    const std::size_t panels = std::max<std::size_t>(64 * n, 4096);
    const double dt = (t1 - t0) / static_cast<double>(panels);
    std::vector<double> cum(panels + 1, 0.0);
    for (std::size_t j = 0; j < panels; ++j) {
        const double a = t0 + dt * static_cast<double>(j);
        cum[j + 1] = cum[j] + speed_integral(df, a, a + dt);
    }
    const double L = cum.back();
    std::vector<Vec2> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double target = L * static_cast<double>(k) / static_cast<double>(n);
        auto it = std::upper_bound(cum.begin(), cum.end(), target);
        const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()) - 1, panels - 1);
        const double panel_start = t0 + dt * static_cast<double>(j);
        double lo = panel_start, hi = panel_start + dt;
        const double base = cum[j];
        double t = lo + dt * (target - base) / std::max(cum[j + 1] - base, 1e-300);
        for (int iter = 0; iter < 60; ++iter) {
            const double g = base + speed_integral(df, panel_start, t) - target;
            if (g > 0.0) hi = t; else lo = t;
            const double sp = norm(df(t));
            double next = sp > 0.0 ? t - g / sp : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::fabs(next - t) <= 1e-16 * std::max(1.0, std::fabs(t))) {
                t = next;
                break;
            }
            t = next;
        }
        v[k] = f(t);
    }
    return Curve(std::move(v));
}

Curve epicycle_curve(std::span<const Epicycle> terms, std::size_t n) {
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    std::vector<Epicycle> t(terms.begin(), terms.end());
    auto f = [t, I](double s) {
        C z;
        for (const auto& e : t) z += e.radius * std::exp(I * (e.frequency * s));
        return from_complex(z);
    };
    auto df = [t, I](double s) {
        C z;
        for (const auto& e : t) z += I * (e.frequency * e.radius) * std::exp(I * (e.frequency * s));
        return from_complex(z);
    };
    return sample_by_arclength(f, df, 0.0, kTwoPi, n);
}

Curve epicycle_curve(double R, int a, double rho, int b, std::size_t n) {
    const Epicycle terms[] = {{R, a}, {rho, b}};
    return epicycle_curve(terms, n);
}

Curve nested_loop_curve(std::size_t n) {
    const Epicycle terms[] = {{1.0, -2}, {1.0, 3}, {0.2, -1}};
    return orient_positive(epicycle_curve(terms, n));
}

Curve fourier_loop(std::uint64_t seed, std::size_t n, int harmonics) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<std::array<double, 4>> c(static_cast<std::size_t>(harmonics));
    for (auto& k : c) {
        for (double& x : k) x = coef(rng);
    }
    auto f = [c](double t) {
        Vec2 p;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double w = static_cast<double>(k + 1);
            p.x += c[k][0] * std::cos(w * t) + c[k][1] * std::sin(w * t);
            p.y += c[k][2] * std::cos(w * t) + c[k][3] * std::sin(w * t);
        }
        return p;
    };
    auto df = [c](double t) {
        Vec2 p;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double w = static_cast<double>(k + 1);
            p.x += w * (-c[k][0] * std::sin(w * t) + c[k][1] * std::cos(w * t));
            p.y += w * (-c[k][2] * std::sin(w * t) + c[k][3] * std::cos(w * t));
        }
        return p;
    };
    return sample_by_arclength(f, df, 0.0, kTwoPi, n);
}

namespace {

// Radius of the self-crossing of the petal loop centred on the positive real
// axis, for z = R e^{-it} + u R e^{imt}.
double crossing_radius(double R, double u, int m, int petals) {
    const double rho = u * R;
    auto g = [&](double t) { return rho * std::sin(m * t) - R * std::sin(t); };
    double lo = 1e-9, hi = std::numbers::pi / petals;
    if (!(g(lo) > 0.0) || !(g(hi) < 0.0)) return std::nan("");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return R * std::cos(t) + rho * std::cos(m * t);
}

}  // namespace

double flower_loop_ratio(const FlowerParams& p) {
    if (p.petals < 3) throw Error(ErrorCode::InvalidInput, "a flower needs at least 3 petals");
    if (!(p.apex_radius > p.inner_radius) || !(p.inner_radius > 0.0)) {
        throw Error(ErrorCode::ConstructionFailed, "need apex_radius > inner_radius > 0");
    }
    const int m = p.petals - 1;
    auto radius_at = [&](double u) { return crossing_radius(p.apex_radius / (1.0 + u), u, m, p.petals); };
    double lo = 1.0 / m + 1e-9, hi = 1.0 - 1e-9;
    const double r_lo = radius_at(lo), r_hi = radius_at(hi);
    if (!(r_lo > p.inner_radius && r_hi < p.inner_radius)) {
        throw Error(ErrorCode::ConstructionFailed, "inner radius not reachable for these proportions");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (radius_at(mid) > p.inner_radius ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Curve flower_generate(const FlowerParams& p) {
    const double u = flower_loop_ratio(p);
    const int m = p.petals - 1;
    // Im(conj(z') z'') / R^2 = m^3 u^2 - 1 - m (m-1) u cos(k t), smallest at cos = 1.
    const double md = static_cast<double>(m);
    if (!(md * md * md * u * u - md * (md - 1.0) * u - 1.0 > 0.0)) {
        throw Error(ErrorCode::ConstructionFailed, "parameters give non-positive curvature");
    }
    const double R = p.apex_radius / (1.0 + u);
    Curve curve = epicycle_curve(R, -1, u * R, m, p.samples);

    if (!positively_curved(curve)) throw Error(ErrorCode::ConstructionFailed, "sampled flower is not positively curved");
    const auto records = self_intersections(curve);
    if (records.size() != static_cast<std::size_t>(p.petals)) {
        throw Error(ErrorCode::ConstructionFailed, "expected one self-crossing per petal, found " +
                                                       std::to_string(records.size()));
    }
    for (const auto& r : records) {
        if (r.order != 2) throw Error(ErrorCode::ConstructionFailed, "petal crossing is not of order 2");
    }
    if (winding_number(curve, {0.0, 0.0}) != -1) throw Error(ErrorCode::ConstructionFailed, "center index is not -1");
    for (int k = 0; k < p.petals; ++k) {
        const double angle = -kTwoPi * k / p.petals;
        const double r = 0.5 * (p.inner_radius + p.apex_radius);
        if (winding_number(curve, {r * std::cos(angle), r * std::sin(angle)}) != 1) {
            throw Error(ErrorCode::ConstructionFailed, "petal index is not +1");
        }
    }
    return curve.with_note(OrientationNote::PositivelyCurved);
}

}  // namespace windex
