#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

namespace triterp::geom {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Non-degenerate triangle. The constructor reorders clockwise input to
/// counterclockwise and rejects triangles whose area underflows to zero.
class Triangle {
  public:
    Triangle(Point2 a, Point2 b, Point2 c);
    Triangle(double x1, double y1, double x2, double y2, double x3, double y3);

    const Point2& v(int i) const { return v_[i]; }
    const std::array<Point2, 3>& vertices() const { return v_; }
    double signed_area() const;

  private:
    std::array<Point2, 3> v_;
};

struct TriangleMetrics {
    double h1;             // shortest edge
    double h2;             // middle edge
    double hK;             // longest edge (diameter)
    double S;              // area
    double R;              // circumradius, h1*h2*hK / (4S)
    double rho;            // inscribed-circle diameter, 4S / (h1+h2+hK)
    double theta_min;      // smallest interior angle
    double theta_max;      // largest interior angle, in [pi/3, pi)
    double chunkiness;     // hK / rho
    double semiregularity; // R / hK = 1 / (2 sin theta_max)
};

TriangleMetrics metrics(const Triangle& t);

/// y = linear * x + shift
struct AffineMap2 {
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
    Eigen::Vector2d shift = Eigen::Vector2d::Zero();

    Point2 operator()(const Point2& p) const;
    AffineMap2 inverse() const;
};

/// Similarity-normalized triangle: vertices (0,0), (1,0), (alpha*s, alpha*t)
/// with alpha = h1/h2 in (0,1], s = cos(theta_max) <= alpha/2 and
/// t = sin(theta_max) > 0.  The origin sits at the vertex shared by the two
/// shortest edges, so theta_max is the angle enclosed there and the longest
/// edge is the mapped image of the far side.  `map` carries the original
/// triangle onto this configuration (translation, rotation, scaling by 1/h2
/// and, if needed, a reflection).
struct StandardForm {
    double alpha;
    double s;
    double t;
    AffineMap2 map;

    Triangle standardized() const;
};

StandardForm standard_form(const Triangle& t);

struct EigenPair {
    double mu_min;
    double mu_max;
};

/// A maps the axis-aligned right triangle (0,0),(1,0),(0,alpha) onto the
/// standard form; B is its inverse.  The eigenvalue pairs of A^T A and B B^T
/// have the closed forms 1 -+ |s| and (1 -+ |s|)/t^2.
struct MatrixPair {
    Eigen::Matrix2d A;
    Eigen::Matrix2d B;
    EigenPair eig_ata;
    EigenPair eig_bbt;
};

MatrixPair matrix_pair(const StandardForm& sf);

/// k-fold Kronecker power, dimension 2^k. k >= 1.
Eigen::MatrixXd kron_power(const Eigen::Matrix2d& m, int k);

/// lhs = 1/sqrt(1-|s|), rhs = 2*sqrt(2)*R with R the circumradius of the
/// standardized triangle; lhs <= rhs for every admissible standard form.
std::pair<double, double> eig_gap_circum_bound(const StandardForm& sf, double circumradius);

/// Center of the circumscribed circle (test oracle for the R formula).
Point2 circumcenter(const Triangle& t);

} // namespace triterp::geom
