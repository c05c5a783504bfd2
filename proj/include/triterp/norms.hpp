#pragma once

#include "triterp/polynomial.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace triterp::norms {

using geom::Point2;
using geom::Triangle;
using poly::Poly2;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Quadrature rule in barycentric coordinates; weights are area fractions
/// (they sum to 1), so  int_T f  ~  S * sum_i w_i f(x_i).
/// Rules exist for exactness degrees 1..20.  Degrees 1 and 2 are the classic
/// centroid and edge-midpoint rules; higher degrees come from a conical Gauss
/// product, symmetrized over the six barycentric permutations so every rule is
/// invariant under relabeling and all points stay strictly inside.  Every rule
/// is checked at construction against the exact factorial formula for all
/// barycentric monomials up to its degree and cached.
struct QuadratureRule {
    int exactness;
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weights;

    size_t size() const { return weights.size(); }
    Point2 point(size_t i, const Triangle& t) const;
};

const QuadratureRule& quad_rule(int degree);
constexpr int kMaxQuadDegree = 20;

/// Global degree bump added on top of any requested base degree (conservative
/// safety margin).  Initialized from TRITERP_QUAD_BUMP, default +2.
int quad_degree_bump();
void set_quad_degree_bump(int bump);

/// Effective rule degree for integrating |q|^p with q a polynomial of degree
/// `poly_degree`: p*degree rounded up, +4 when |.|^p is not a polynomial
/// (kinks), plus the global bump, clamped to the available range.
int rule_degree_for(int poly_degree, double p);

/// A scalar field together with its partial derivatives d(dx, dy, x, y) up to
/// `max_order`.  Plain struct so adapters (pullbacks, differences) compose.
struct FieldWithDerivatives {
    std::string name;
    int max_order = 0;
    std::function<double(int, int, double, double)> d;

    double value(double x, double y) const { return d(0, 0, x, y); }
};

FieldWithDerivatives field_from_poly(const Poly2& p, std::string name = "poly");
FieldWithDerivatives field_x_squared();
/// sin(ax) * sin(by); defaults to the product of unit-period sinusoids.
FieldWithDerivatives field_sin_product(double a = 3.14159265358979323846,
                                       double b = 3.14159265358979323846);
/// u(x/Y): derivatives pick up Y^-order.
FieldWithDerivatives field_rescaled(const FieldWithDerivatives& u, double Y);
FieldWithDerivatives field_scaled_by(const FieldWithDerivatives& u, double factor);
FieldWithDerivatives field_difference(const FieldWithDerivatives& u,
                                      const FieldWithDerivatives& v);

/// |f|_{m,p,T}.  Finite p: quadrature with the given rule.  p = infinity:
/// max of |d^delta f| over the rule points plus a fixed 561-point barycentric
/// lattice; a lower estimate of the true sup, as documented.
double sobolev_seminorm(const FieldWithDerivatives& f, int m, double p,
                        const Triangle& t, const QuadratureRule& rule);

/// Same, choosing the rule from `base_degree` (the polynomial degree of the
/// derivatives being integrated, or a stand-in for smooth fields).
double sobolev_seminorm(const FieldWithDerivatives& f, int m, double p,
                        const Triangle& t, int base_degree = 8);

/// Exponent pair for the l^p / l^2 norm comparisons on N-vectors:
/// sum U_i^p <= N^tau(p) (sum U_i^2)^{p/2} and
/// (sum U_i^2)^{p/2} <= N^gamma(p) sum U_i^p, with
/// tau = 1 - p/2 for p <= 2 (else 0), gamma = p/2 - 1 for p >= 2 (else 0).
std::pair<double, double> tau_gamma(double p);

/// Checks |v|_{k,p,YT} = Y^(2/p - k) |u|_{k,p,T} for v(x) = u(x/Y):
/// returns (left side on the scaled triangle, scaling factor times the right
/// side on t).
std::pair<double, double> scale_seminorm(const FieldWithDerivatives& u,
                                         const Triangle& t, double Y, int k, double p);

/// Squared euclidean norm, with binomial multiplicities, of the order-k
/// derivative tensor of f at a point: sum_{|delta|=k} C(k,dx) (d^delta f)^2.
double weighted_deriv_sq_sum(const FieldWithDerivatives& f, int k, const Point2& at);

} // namespace triterp::norms
