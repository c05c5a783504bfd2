#pragma once

#include "triterp/bconst.hpp"

#include <span>
#include <vector>

namespace triterp::experiments {

using geom::Triangle;
using geom::TriangleMetrics;
using norms::FieldWithDerivatives;

/// Parametrized degenerating triangle families.
///  - AlphaBeta: (0,0), (h,0), (h^alpha, h^beta) with 1 < alpha < beta < 1+alpha;
///    the inscribed diameter decays like h^beta but the circumradius only like
///    h^(1+alpha-beta), so the two error bounds predict different rates.
///  - Squeeze: (0,0), (1,0), (0,alpha) flattened toward the x-axis; the
///    maximum angle stays at pi/2 and nothing degenerates but the aspect ratio.
///  - ThetaSweep: (0,0), (1,0), (cos theta, sin theta); the maximum angle
///    theta is taken toward pi while the diameter stays ~1.
enum class FamilyKind { AlphaBeta, Squeeze, ThetaSweep };

struct FamilySpec {
    FamilyKind kind;
    double alpha = 0.0; // AlphaBeta only
    double beta = 0.0;  // AlphaBeta only
};

FamilySpec alpha_beta_family(double alpha, double beta);
FamilySpec squeeze_family();
FamilySpec theta_family();

/// Member triangle at parameter value `param` (h, alpha, or theta by kind).
Triangle family_triangle(const FamilySpec& spec, double param);

struct SweepRow {
    double param;
    TriangleMetrics met;
    double error_seminorm;  // |v - I_k v|_{m,p,K}
    double field_seminorm;  // |v|_{k+1,p,K}
    double ratio;           // their quotient (the error seminorm itself if the
                            // denominator vanishes, e.g. v in P_k)
    double bound_standard;  // hK^{k+1} / rho^m
    double bound_circum;    // R^m hK^{k+1-2m}
    double bound_jamet;     // hK^{k+1-m} / cos(theta_max/2)^m
    double rate_local;      // log-slope of `ratio` against the previous row
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int dropped;             // coarsest rows excluded from the fits
    double rate_measured;    // log-log OLS slope of ratio vs h
    double rate_standard;    // same for the three bound shapes
    double rate_circum;
    double rate_jamet;
    bool convergent_measured;
    bool convergent_standard;
};

/// Measured interpolation-error ratios along an AlphaBeta family, with the
/// three bound shapes.  Interpolation only reads point values of v.  With
/// `scale` != 1 every triangle is dilated by that factor and v is pulled back,
/// which shifts all ratios by a constant factor and must not move the rates.
SweepResult sweep_rate(const FamilySpec& spec, const FieldWithDerivatives& v, int k,
                       int m, double p, std::span<const double> hs, double scale = 1.0);

struct SqueezeRow {
    double alpha;
    TriangleMetrics met;
    bconst::BEstimate est;
    double bound_ratio;
};

/// Lower-bound constants across squeeze triangles; p = 2 goes through the
/// eigenproblem, other p through sampling.
std::vector<SqueezeRow> squeeze_sweep(std::span<const double> alphas, int m, int k,
                                      double p, int samples = 400,
                                      std::uint64_t seed = 0);

struct ThetaRow {
    double theta;
    TriangleMetrics met;
    double b_lower;
    double bound_ratio;
};

/// p = 2 lower-bound constants along the ThetaSweep family, plus the trend
/// slope of log(bound_ratio) against log(pi - theta); a slope near zero means
/// the bound shape R^m hK^{k+1-2m} captures the blow-up exactly.
struct ThetaSweepResult {
    std::vector<ThetaRow> rows;
    double ratio_max;
    double ratio_min;
    double trend_slope;
};

ThetaSweepResult theta_sweep(std::span<const double> thetas, int m, int k);

/// ((cos(theta_max/2))^-m, (2 R/hK)^m); the first is the max-angle bound
/// factor, the second equals (1/sin theta_max)^m.  Their quotient lies in
/// [1, 2^m] for any triangle.
std::pair<double, double> jamet_compare(const Triangle& t, int m);
std::pair<double, double> jamet_factors_theta(double theta, int m);

/// OLS slope of log(y) against log(x), skipping the first `drop` entries.
double fit_loglog(std::span<const double> x, std::span<const double> y, int drop);

} // namespace triterp::experiments
