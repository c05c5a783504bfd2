#include "triterp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triterp::geom {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point2& a, const Point2& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Interior angle at vertex `o`; atan2 of (cross, dot) stays fully accurate
// for angles near 0 and pi, where acos of the cosine sheds digits.
double angle_at(const Point2& o, const Point2& a, const Point2& b) {
    const double ux = a.x - o.x, uy = a.y - o.y;
    const double vx = b.x - o.x, vy = b.y - o.y;
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

} // namespace

Triangle::Triangle(Point2 a, Point2 b, Point2 c) : v_{a, b, c} {
    const double s2 = cross(a, b, c); // twice the signed area
    if (s2 < 0.0)
        std::swap(v_[1], v_[2]);
    if (std::abs(s2) / 2.0 < 1e-300)
        throw std::invalid_argument("triangle is degenerate (zero area)");
}

Triangle::Triangle(double x1, double y1, double x2, double y2, double x3, double y3)
    : Triangle(Point2{x1, y1}, Point2{x2, y2}, Point2{x3, y3}) {}

double Triangle::signed_area() const {
    return cross(v_[0], v_[1], v_[2]) / 2.0;
}

TriangleMetrics metrics(const Triangle& t) {
    std::array<double, 3> len = {dist(t.v(0), t.v(1)), dist(t.v(1), t.v(2)),
                                 dist(t.v(2), t.v(0))};
    std::sort(len.begin(), len.end());

    TriangleMetrics m{};
    m.h1 = len[0];
    m.h2 = len[1];
    m.hK = len[2];
    m.S = t.signed_area();
    m.R = m.h1 * m.h2 * m.hK / (4.0 * m.S);
    m.rho = 4.0 * m.S / (m.h1 + m.h2 + m.hK);

    std::array<double, 3> ang = {angle_at(t.v(0), t.v(1), t.v(2)),
                                 angle_at(t.v(1), t.v(2), t.v(0)),
                                 angle_at(t.v(2), t.v(0), t.v(1))};
    m.theta_min = *std::min_element(ang.begin(), ang.end());
    m.theta_max = *std::max_element(ang.begin(), ang.end());
    m.chunkiness = m.hK / m.rho;
    m.semiregularity = m.R / m.hK;
    return m;
}

Point2 AffineMap2::operator()(const Point2& p) const {
    const Eigen::Vector2d y = linear * Eigen::Vector2d(p.x, p.y) + shift;
    return {y(0), y(1)};
}

AffineMap2 AffineMap2::inverse() const {
    AffineMap2 inv;
    inv.linear = linear.inverse();
    inv.shift = -inv.linear * shift;
    return inv;
}

Triangle StandardForm::standardized() const {
    return Triangle(Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{alpha * s, alpha * t});
}

StandardForm standard_form(const Triangle& t) {
    // Edges keyed by (length, lower endpoint index, higher endpoint index) so
    // ties in length are broken by the original vertex order.
    struct Edge {
        double len;
        int a, b; // a < b
    };
    std::array<Edge, 3> e = {Edge{dist(t.v(0), t.v(1)), 0, 1},
                             Edge{dist(t.v(1), t.v(2)), 1, 2},
                             Edge{dist(t.v(0), t.v(2)), 0, 2}};
    std::sort(e.begin(), e.end(), [](const Edge& l, const Edge& r) {
        return std::tie(l.len, l.a, l.b) < std::tie(r.len, r.a, r.b);
    });

    // The two shortest edges meet at one vertex; it becomes the origin and the
    // enclosed angle there is theta_max.  The middle edge is normalized onto
    // the unit x-axis segment.
    int origin;
    if (e[0].a == e[1].a || e[0].a == e[1].b)
        origin = e[0].a;
    else
        origin = e[0].b;
    const int short_end = e[0].a == origin ? e[0].b : e[0].a;
    const int mid_end = e[1].a == origin ? e[1].b : e[1].a;

    const Point2& o = t.v(origin);
    const Point2& pm = t.v(mid_end);
    const Point2& ps = t.v(short_end);
    const double h1 = e[0].len, h2 = e[1].len;

    StandardForm sf;
    sf.alpha = h1 / h2;
    sf.s = ((pm.x - o.x) * (ps.x - o.x) + (pm.y - o.y) * (ps.y - o.y)) / (h1 * h2);
    sf.t = std::abs(cross(o, pm, ps)) / (h1 * h2);

    // Rotation sending (pm - o)/h2 to (1,0), then a reflection if the short
    // edge ended up below the axis.
    const double cx = (pm.x - o.x) / h2, cy = (pm.y - o.y) / h2;
    AffineMap2 map;
    map.linear << cx / h2, cy / h2, -cy / h2, cx / h2;
    if (cross(o, pm, ps) < 0.0)
        map.linear.row(1) *= -1.0;
    map.shift = -map.linear * Eigen::Vector2d(o.x, o.y);
    sf.map = map;
    return sf;
}

MatrixPair matrix_pair(const StandardForm& sf) {
    if (!(sf.t > 0.0))
        throw std::invalid_argument("standard form requires sin(theta) > 0");
    MatrixPair mp;
    mp.A << 1.0, sf.s, 0.0, sf.t;
    mp.B << 1.0, -sf.s / sf.t, 0.0, 1.0 / sf.t;
    const double a = std::abs(sf.s);
    const double t2 = sf.t * sf.t;
    mp.eig_ata = {1.0 - a, 1.0 + a};
    mp.eig_bbt = {(1.0 - a) / t2, (1.0 + a) / t2};
    return mp;
}

Eigen::MatrixXd kron_power(const Eigen::Matrix2d& m, int k) {
    if (k < 1)
        throw std::invalid_argument("kron_power requires k >= 1");
    Eigen::MatrixXd out = m;
    for (int step = 1; step < k; ++step) {
        Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) =
                    m(i, j) * out;
        out = std::move(next);
    }
    return out;
}

std::pair<double, double> eig_gap_circum_bound(const StandardForm& sf, double circumradius) {
    return {1.0 / std::sqrt(1.0 - std::abs(sf.s)), 2.0 * std::sqrt(2.0) * circumradius};
}

Point2 circumcenter(const Triangle& t) {
    // Perpendicular-bisector intersection in coordinates relative to v0.
    const double bx = t.v(1).x - t.v(0).x, by = t.v(1).y - t.v(0).y;
    const double cx = t.v(2).x - t.v(0).x, cy = t.v(2).y - t.v(0).y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    return {t.v(0).x + (cy * b2 - by * c2) / d, t.v(0).y + (bx * c2 - cx * b2) / d};
}

} // namespace triterp::geom
