#pragma once

#include "triterp/geometry.hpp"

#include <string>
#include <vector>

namespace triterp::poly {

using geom::AffineMap2;
using geom::Point2;
using geom::Triangle;

struct MultiIndex {
    int dx = 0;
    int dy = 0;
    int order() const { return dx + dy; }
};

/// Dense bivariate polynomial over the monomials x^i y^j, stored in
/// graded-lexicographic order (total degree ascending, y-exponent ascending
/// within a grade).  Interpolation work stays at degree <= 12; products formed
/// while integrating squared derivatives may go up to twice that.
class Poly2 {
  public:
    static constexpr int kMaxDegree = 24;

    Poly2() : deg_(0), c_(1, 0.0) {}
    explicit Poly2(int degree);
    static Poly2 constant(double value);
    static Poly2 monomial(int i, int j, double coeff = 1.0);

    int degree() const { return deg_; }
    double coeff(int i, int j) const;
    void set_coeff(int i, int j, double value);

    double eval(const Point2& p) const;
    Poly2 derivative(int dx, int dy) const;

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 operator*(double a) const;

    /// Substitute the affine map: result(u) = (*this)(f(u)).
    Poly2 compose_affine(const AffineMap2& f) const;

    /// Smallest degree that still carries a nonzero coefficient (with a small
    /// absolute cutoff so exact arithmetic noise does not inflate the degree).
    int effective_degree(double cutoff = 0.0) const;

    std::string to_string() const;

  private:
    static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
    int deg_;
    std::vector<double> c_;
};

/// Exact integral of a barycentric monomial lambda1^a lambda2^b lambda3^c over
/// the triangle: 2S a! b! c! / (a+b+c+2)!.  Exponent sum capped at 60.
double integrate_monomial(const Triangle& t, int a, int b, int c);

/// Exact integral of p over t (affine pullback to the reference triangle plus
/// the factorial formula).
double integrate(const Poly2& p, const Triangle& t);

/// Derivative evaluation; zero once the order exceeds the degree.
double eval_diff(const Poly2& p, MultiIndex d, const Point2& at);

/// |p|_{m,2,t}: sum over the m+1 derivative multi-indices of order m of the
/// exact integrals of the squared derivatives, square-rooted.
double seminorm_p2_exact(const Poly2& p, int m, const Triangle& t);

/// Polarized form of the same seminorm: sum_delta int d^delta p * d^delta q.
double seminorm_p2_bilinear(const Poly2& p, const Poly2& q, int m, const Triangle& t);

/// Affine map sending the reference triangle (0,0),(1,0),(0,1) onto t.
AffineMap2 reference_map(const Triangle& t);

} // namespace triterp::poly
