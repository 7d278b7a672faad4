#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "windex/curve.hpp"

namespace windex {

Curve circle_curve(std::size_t n, double radius = 1.0, Vec2 center = {}, bool ccw = true, int turns = 1);

// Axis-aligned square with its lower-left corner at the origin, traversed
// counterclockwise, four tagged corners.
Curve square_curve(double side, std::size_t points_per_side = 1);

// Samples the closed curve f on [t0, t1) at n points equally spaced in arc
// length. df is the derivative of f; arc length is integrated with
// Gauss-Legendre panels and inverted by safeguarded Newton, so every vertex
// lies on f.
Curve sample_by_arclength(const std::function<Vec2(double)>& f, const std::function<Vec2(double)>& df, double t0,
                          double t1, std::size_t n);

struct Epicycle {
    double radius = 1.0;
    int frequency = 1;
};

// z(t) = sum r_k e^{i f_k t}, t in [0, 2 pi).
Curve epicycle_curve(std::span<const Epicycle> terms, std::size_t n);
Curve epicycle_curve(double R, int a, double rho, int b, std::size_t n);

// Positively curved three-term epicycle (frequencies -2, 3, -1). The loop
// kept by the first cut still encloses a negative region, so the cutter
// needs exactly two iterations.
Curve nested_loop_curve(std::size_t n = kDefaultSamples);

// x(t), y(t) = sum_{k<=harmonics} a_k cos kt + b_k sin kt with all
// coefficients uniform in [-1, 1], drawn from a seeded mt19937_64.
Curve fourier_loop(std::uint64_t seed, std::size_t n = kDefaultSamples, int harmonics = 4);

struct FlowerParams {
    int petals = 5;
    double apex_radius = 1.75;
    double inner_radius = 1.0;  // radius of the petal self-crossings
    std::size_t samples = kDefaultSamples;
};

// Smooth positively curved flower: the curve circles the origin once
// clockwise while every petal is a counterclockwise loop. Index +1 in each
// petal, -1 in the center. Throws ConstructionFailed when the parameters
// cannot produce that pattern with positive curvature.
Curve flower_generate(const FlowerParams& params = {});

// Loop ratio rho / R used by flower_generate.
double flower_loop_ratio(const FlowerParams& params);

}  // namespace windex
