#include "triterp/norms.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace triterp::norms {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes and weights on [0,1] by Newton iteration on P_n.
void gauss01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = (1.0 - z) / 2.0;
        w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    }
}

QuadratureRule build_rule(int degree) {
    QuadratureRule r;
    r.exactness = degree;
    if (degree == 1) {
        r.bary = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
        r.weights = {1.0};
        return r;
    }
    if (degree == 2) {
        r.bary = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
        r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        return r;
    }
    // Conical product: u along one edge direction, v collapsed by (1-u); the
    // jacobian (1-u) raises the u-degree by one, hence the +3 in the count.
    const int n = (degree + 3) / 2;
    std::vector<double> gx, gw;
    gauss01(n, gx, gw);
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = gx[i];
            const double v = gx[j] * (1.0 - u);
            const double w = gw[i] * gw[j] * (1.0 - u);
            const double lam[3] = {1.0 - u - v, u, v};
            for (const auto& p : perms) {
                r.bary.push_back({lam[p[0]], lam[p[1]], lam[p[2]]});
                r.weights.push_back(w / 6.0);
            }
            total += w;
        }
    for (double& w : r.weights)
        w /= total;
    return r;
}

void validate_rule(const QuadratureRule& r) {
    // Area-fraction weights on the reference triangle must reproduce
    // 2 a! b! c! / (a+b+c+2)! for every monomial within the stated degree.
    const Triangle ref(0.0, 0.0, 1.0, 0.0, 0.0, 1.0);
    for (int a = 0; a <= r.exactness; ++a)
        for (int b = 0; a + b <= r.exactness; ++b)
            for (int c = 0; a + b + c <= r.exactness; ++c) {
                double q = 0.0;
                for (size_t i = 0; i < r.size(); ++i)
                    q += r.weights[i] * std::pow(r.bary[i][0], a) *
                         std::pow(r.bary[i][1], b) * std::pow(r.bary[i][2], c);
                q *= 0.5; // S of the reference triangle
                const double exact = poly::integrate_monomial(ref, a, b, c);
                if (std::abs(q - exact) > 1e-13 * std::max(1.0, std::abs(exact)))
                    throw std::runtime_error("quadrature self-check failed at degree " +
                                             std::to_string(r.exactness));
            }
}

std::atomic<int>& bump_storage() {
    static std::atomic<int> bump = [] {
        if (const char* env = std::getenv("TRITERP_QUAD_BUMP"))
            return std::atoi(env);
        return 2;
    }();
    return bump;
}

// 561 = (32+1)(32+2)/2 lattice points of the order-32 barycentric grid; used
// to widen the search set for the sup-norm estimate.
const std::vector<std::array<double, 3>>& sup_lattice() {
    static const auto pts = [] {
        std::vector<std::array<double, 3>> v;
        const int k = 32;
        for (int a = k; a >= 0; --a)
            for (int b = k - a; b >= 0; --b)
                v.push_back({a / double(k), b / double(k), (k - a - b) / double(k)});
        return v;
    }();
    return pts;
}

} // namespace

Point2 QuadratureRule::point(size_t i, const Triangle& t) const {
    const auto& l = bary[i];
    return {l[0] * t.v(0).x + l[1] * t.v(1).x + l[2] * t.v(2).x,
            l[0] * t.v(0).y + l[1] * t.v(1).y + l[2] * t.v(2).y};
}

const QuadratureRule& quad_rule(int degree) {
    if (degree < 1 || degree > kMaxQuadDegree)
        throw std::invalid_argument("quadrature degree must be in 1..20");
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[degree];
    if (!slot) {
        auto rule = std::make_unique<QuadratureRule>(build_rule(degree));
        validate_rule(*rule);
        slot = std::move(rule);
    }
    return *slot;
}

int quad_degree_bump() { return bump_storage().load(); }

void set_quad_degree_bump(int bump) { bump_storage().store(bump); }

int rule_degree_for(int poly_degree, double p) {
    const bool even_integer = p == std::floor(p) && std::fmod(p, 2.0) == 0.0;
    double d = std::ceil(std::max(1, poly_degree) * std::max(1.0, p));
    if (!even_integer)
        d += 4.0;
    d += quad_degree_bump();
    return static_cast<int>(std::clamp(d, 1.0, double(kMaxQuadDegree)));
}

FieldWithDerivatives field_from_poly(const Poly2& p, std::string name) {
    return {std::move(name), poly::Poly2::kMaxDegree,
            [p](int dx, int dy, double x, double y) {
                return poly::eval_diff(p, {dx, dy}, {x, y});
            }};
}

FieldWithDerivatives field_x_squared() {
    return field_from_poly(Poly2::monomial(2, 0), "x^2");
}

FieldWithDerivatives field_sin_product(double a, double b) {
    return {"sin(ax)sin(by)", 64, [a, b](int dx, int dy, double x, double y) {
                // d^n sin(ax) = a^n sin(ax + n pi/2)
                const double fx = std::pow(a, dx) * std::sin(a * x + dx * kPi / 2.0);
                const double fy = std::pow(b, dy) * std::sin(b * y + dy * kPi / 2.0);
                return fx * fy;
            }};
}

FieldWithDerivatives field_rescaled(const FieldWithDerivatives& u, double Y) {
    if (Y <= 0.0)
        throw std::invalid_argument("scale factor must be positive");
    return {u.name + "(x/Y)", u.max_order, [u, Y](int dx, int dy, double x, double y) {
                return u.d(dx, dy, x / Y, y / Y) / std::pow(Y, dx + dy);
            }};
}

FieldWithDerivatives field_scaled_by(const FieldWithDerivatives& u, double factor) {
    return {u.name, u.max_order, [u, factor](int dx, int dy, double x, double y) {
                return factor * u.d(dx, dy, x, y);
            }};
}

FieldWithDerivatives field_difference(const FieldWithDerivatives& u,
                                      const FieldWithDerivatives& v) {
    return {u.name + "-" + v.name, std::min(u.max_order, v.max_order),
            [u, v](int dx, int dy, double x, double y) {
                return u.d(dx, dy, x, y) - v.d(dx, dy, x, y);
            }};
}

double sobolev_seminorm(const FieldWithDerivatives& f, int m, double p,
                        const Triangle& t, const QuadratureRule& rule) {
    if (m < 0)
        throw std::invalid_argument("seminorm order must be nonnegative");
    if (m > f.max_order)
        throw std::invalid_argument("field does not provide derivatives of order " +
                                    std::to_string(m));
    if (p != kInf && p < 1.0)
        throw std::invalid_argument("p must be in [1, inf]");

    if (p == kInf) {
        double best = 0.0;
        auto scan = [&](double x, double y) {
            for (int dx = m; dx >= 0; --dx)
                best = std::max(best, std::abs(f.d(dx, m - dx, x, y)));
        };
        for (size_t i = 0; i < rule.size(); ++i) {
            const Point2 q = rule.point(i, t);
            scan(q.x, q.y);
        }
        for (const auto& l : sup_lattice()) {
            scan(l[0] * t.v(0).x + l[1] * t.v(1).x + l[2] * t.v(2).x,
                 l[0] * t.v(0).y + l[1] * t.v(1).y + l[2] * t.v(2).y);
        }
        return best;
    }

    const double S = t.signed_area();
    double total = 0.0;
    for (int dx = m; dx >= 0; --dx) {
        const int dy = m - dx;
        double acc = 0.0;
        for (size_t i = 0; i < rule.size(); ++i) {
            const Point2 q = rule.point(i, t);
            acc += rule.weights[i] * std::pow(std::abs(f.d(dx, dy, q.x, q.y)), p);
        }
        total += S * acc;
    }
    return std::pow(total, 1.0 / p);
}

double sobolev_seminorm(const FieldWithDerivatives& f, int m, double p,
                        const Triangle& t, int base_degree) {
    const int deg = p == kInf ? std::clamp(base_degree + quad_degree_bump(), 1,
                                           kMaxQuadDegree)
                              : rule_degree_for(base_degree, p);
    return sobolev_seminorm(f, m, p, t, quad_rule(deg));
}

std::pair<double, double> tau_gamma(double p) {
    if (!(p >= 1.0) || p == kInf)
        throw std::invalid_argument("tau/gamma defined for finite p >= 1");
    const double tau = p <= 2.0 ? 1.0 - p / 2.0 : 0.0;
    const double gamma = p <= 2.0 ? 0.0 : p / 2.0 - 1.0;
    return {tau, gamma};
}

std::pair<double, double> scale_seminorm(const FieldWithDerivatives& u,
                                         const Triangle& t, double Y, int k, double p) {
    if (Y <= 0.0)
        throw std::invalid_argument("scale factor must be positive");
    const Triangle scaled(Y * t.v(0).x, Y * t.v(0).y, Y * t.v(1).x, Y * t.v(1).y,
                          Y * t.v(2).x, Y * t.v(2).y);
    const double lhs = sobolev_seminorm(field_rescaled(u, Y), k, p, scaled);
    const double invp = p == kInf ? 0.0 : 1.0 / p;
    const double rhs = std::pow(Y, 2.0 * invp - k) * sobolev_seminorm(u, k, p, t);
    return {lhs, rhs};
}

double weighted_deriv_sq_sum(const FieldWithDerivatives& f, int k, const Point2& at) {
    double sum = 0.0;
    double binom = 1.0; // C(k, dx) built up iteratively
    for (int dx = 0; dx <= k; ++dx) {
        const double v = f.d(dx, k - dx, at.x, at.y);
        sum += binom * v * v;
        binom = binom * (k - dx) / (dx + 1.0);
    }
    return sum;
}

} // namespace triterp::norms
