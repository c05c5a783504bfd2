#pragma once

#include "triterp/interpolation.hpp"
#include "triterp/norms.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace triterp::bconst {

using geom::Triangle;
using geom::TriangleMetrics;
using poly::Poly2;

/// Generalized Rayleigh problem on the (2k+5)-dimensional test space spanned
/// by the homogeneous polynomials of degrees k+1 and k+2: M is the quadratic
/// form |h - I_k h|^2_{m,2,K}, N the form |h|^2_{k+1,2,K}, both assembled with
/// exact integrals in the monomial basis (degree k+1 block first).
///
/// Degree k+1 alone is not enough: for any triangle with its long edge on a
/// line, the P_k interpolant of the pure power x^{k+1} has no second
/// derivative across the short direction (the coefficient cancels exactly),
/// so degree-(k+1) candidates miss the m >= 2 blow-up that degree-(k+2)
/// candidates such as x^{k+2} expose. Including both keeps the estimate a
/// lower bound (the sup defining B ranges over all of W^{k+1,p}) while
/// letting it track R^m for the second-derivative seminorms.
struct RayleighProblem {
    Eigen::MatrixXd M;
    Eigen::MatrixXd N;
    int m;
    int k;
};

RayleighProblem rayleigh_problem(int m, int k, const Triangle& t);

/// A certified LOWER bound for the interpolation constant
///   B^{m,k}_p(K) = sup |v - I_k v|_{m,p,K} / |v|_{k+1,p,K};
/// the sup is restricted to a finite-dimensional polynomial family, so the
/// reported value can only undershoot the true constant.
struct BEstimate {
    double value;
    Poly2 maximizer; // representative from the test space attaining `value`
    std::string method;
};

/// p = 2 bound through the generalized symmetric eigenproblem (M, N);
/// the maximizer is the top eigenvector.
BEstimate b_poly_lower(int m, int k, const Triangle& t);

/// General-p bound: deterministic directions on the coefficient sphere,
/// scored by quadrature seminorm ratios, then the best direction is refined
/// with 50 coordinate-wise golden-section line searches.
BEstimate b_sample_lower(int m, int k, double p, const Triangle& t, int samples,
                         std::uint64_t seed);

/// Ratio of the seminorm ratio |h-I_k h|_{m,p}/|h|_{k+1,p} for one candidate.
double candidate_ratio(const Poly2& h, int m, int k, double p, const Triangle& t);

/// est.value / (R^m hK^{k+1-2m}); flat in a family exactly when the lower
/// bound tracks the circumradius growth law.
double bound_ratio(const BEstimate& est, const TriangleMetrics& met, int m, int k);

} // namespace triterp::bconst
