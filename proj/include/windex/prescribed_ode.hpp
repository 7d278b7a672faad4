#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windex/curve.hpp"
#include "windex/plane_field.hpp"
#include "windex/stokes.hpp"

namespace windex {

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kFieldLimit = 1e6;

struct ShotResult {
    Vec2 start_point;
    Vec2 start_tangent;
    std::vector<Vec2> trajectory;  // open polyline, one point per step
    double closure_defect = INFINITY;  // |gamma* - gamma0| + |t* - t0| at the first near-return
    double return_length = NAN;
    Vec2 return_point;
    Vec2 return_tangent;
    std::size_t steps = 0;
    double max_tangent_drift = 0.0;  // max | |t| - 1 | after renormalisation
};

// Classical RK4 on gamma' = t, t' = H(gamma) rot90(t), renormalising t after
// every step. A near-return is the first step (past 10 steps) where
// <gamma - gamma0, t> turns non-negative within 10 steps of the start with
// <t, t0> > 1/2; it is located by bisection on a partial step.
// Throws FieldBlowup when |H| exceeds 1e6 along the way.
ShotResult integrate(const ScalarField& H, Vec2 start, Vec2 tangent, double max_length, double step = kDefaultStep,
                     bool keep_trajectory = true);

// Curvature of the lemniscate (x^2 + y^2)^2 = a^2 (x^2 - y^2) as a function
// of the abscissa, in the orientation where the right lobe is
// counterclockwise. Throws OutOfRange for |x1| > a.
double lemniscate_curvature(double a, double x1);

// The same formula as a plane field (no range check, defined for every x).
ScalarField lemniscate_field(double a);

// Lemniscate sampled at n points equally spaced in arc length, starting at
// the origin heading down and right, right lobe counterclockwise.
Curve lemniscate_generate(double a, std::size_t n = kDefaultSamples);

struct AuditReport {
    double a = 1.0;
    double cartesian_residual = 0.0;      // max |(x^2+y^2)^2 - a^2 (x^2-y^2)| / a^4
    double curvature_error = 0.0;         // max |kappa - c(x1)| for |x1| > 0.05 a
    double c_at_apex = 0.0;               // c(a)
    double min_derivative = 0.0;          // min sampled c'(x1) over 1000 abscissas
    double derivative_near_zero = 0.0;    // c'(0) by central differences, reported separately
    double min_curvature = 0.0;           // min c over the vertices
    Obstruction obstruction;              // H = c(x1), e = (1, 0)
    bool curvature_ok = false;
    bool monotone_ok = false;
    bool sign_change = false;
    bool area_ok = false;
    bool cartesian_ok = false;
    bool pass() const { return curvature_ok && monotone_ok && sign_change && area_ok && cartesian_ok; }
};

AuditReport counterexample_audit(double a, std::size_t samples = 4096, std::size_t resolution = 512);

struct SurveyConfig {
    Vec2 lo{-2.0, -2.0};
    Vec2 hi{2.0, 2.0};
    std::size_t starts = 20;   // per side, cell-centred
    std::size_t angles = 16;
    double max_length = 50.0;
    double step = kDefaultStep;
    Vec2 direction{1.0, 0.0};
    double tolerance = 1e-3;
    std::uint64_t seed = 1;    // hypothesis sampling
};

struct SurveyRow {
    Vec2 start;
    double angle = 0.0;
    double closure_defect = INFINITY;
    double return_length = NAN;
    bool blowup = false;
};

struct SurveyReport {
    std::vector<SurveyRow> rows;  // start-major, then angle
    double min_defect = INFINITY;
    std::size_t closures = 0;     // rows with defect below tolerance
    HypothesisReport hypothesis;
};

// Throws HypothesisViolated when H > 0 or <grad H, e> > 0 fails the
// sampling check on the survey box.
SurveyReport shooting_survey(const ScalarField& H, const SurveyConfig& config);

std::string survey_csv(const SurveyReport& report);

}  // namespace windex
