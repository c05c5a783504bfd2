#include "triterp/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace triterp::poly {

namespace {

constexpr int kMaxExponentSum = 60;

// 0! .. 62! in extended precision; (a+b+c+2)! needs two slots of headroom.
const long double* factorials() {
    static const auto table = [] {
        static long double f[kMaxExponentSum + 3];
        f[0] = 1.0L;
        for (int i = 1; i <= kMaxExponentSum + 2; ++i)
            f[i] = f[i - 1] * static_cast<long double>(i);
        return &f[0];
    }();
    return table;
}

int checked_degree(int degree) {
    if (degree < 0 || degree > Poly2::kMaxDegree)
        throw std::invalid_argument("polynomial degree out of range");
    return degree;
}

int coeff_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

} // namespace

Poly2::Poly2(int degree) : deg_(checked_degree(degree)), c_(coeff_count(deg_), 0.0) {}

Poly2 Poly2::constant(double value) {
    Poly2 p;
    p.c_[0] = value;
    return p;
}

Poly2 Poly2::monomial(int i, int j, double coeff) {
    if (i < 0 || j < 0)
        throw std::invalid_argument("monomial exponents must be nonnegative");
    Poly2 p(checked_degree(i + j));
    p.c_[index(i, j)] = coeff;
    return p;
}

double Poly2::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > deg_)
        return 0.0;
    return c_[index(i, j)];
}

void Poly2::set_coeff(int i, int j, double value) {
    if (i < 0 || j < 0)
        throw std::invalid_argument("monomial exponents must be nonnegative");
    if (i + j > deg_) {
        checked_degree(i + j);
        deg_ = i + j;
        c_.resize(coeff_count(deg_), 0.0);
    }
    c_[index(i, j)] = value;
}

double Poly2::eval(const Point2& p) const {
    // Powers up to the degree, then a flat weighted sum.
    double xp[kMaxDegree + 1], yp[kMaxDegree + 1];
    xp[0] = yp[0] = 1.0;
    for (int i = 1; i <= deg_; ++i) {
        xp[i] = xp[i - 1] * p.x;
        yp[i] = yp[i - 1] * p.y;
    }
    double sum = 0.0;
    for (int g = 0; g <= deg_; ++g)
        for (int j = 0; j <= g; ++j)
            sum += c_[index(g - j, j)] * xp[g - j] * yp[j];
    return sum;
}

Poly2 Poly2::derivative(int dx, int dy) const {
    if (dx < 0 || dy < 0)
        throw std::invalid_argument("derivative order must be nonnegative");
    if (dx + dy > deg_)
        return Poly2();
    Poly2 out(deg_ - dx - dy);
    for (int g = dx + dy; g <= deg_; ++g) {
        for (int j = 0; j <= g; ++j) {
            const int i = g - j;
            if (i < dx || j < dy)
                continue;
            double f = 1.0;
            for (int r = 0; r < dx; ++r)
                f *= static_cast<double>(i - r);
            for (int r = 0; r < dy; ++r)
                f *= static_cast<double>(j - r);
            out.c_[index(i - dx, j - dy)] += f * c_[index(i, j)];
        }
    }
    return out;
}

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 out(std::max(deg_, o.deg_));
    for (size_t i = 0; i < c_.size(); ++i)
        out.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i)
        out.c_[i] += o.c_[i];
    return out;
}

Poly2 Poly2::operator-(const Poly2& o) const {
    return *this + o * -1.0;
}

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 out(checked_degree(deg_ + o.deg_));
    for (int g = 0; g <= deg_; ++g)
        for (int j = 0; j <= g; ++j) {
            const double a = c_[index(g - j, j)];
            if (a == 0.0)
                continue;
            for (int h = 0; h <= o.deg_; ++h)
                for (int l = 0; l <= h; ++l)
                    out.c_[index(g - j + h - l, j + l)] += a * o.c_[index(h - l, l)];
        }
    return out;
}

Poly2 Poly2::operator*(double a) const {
    Poly2 out = *this;
    for (double& v : out.c_)
        v *= a;
    return out;
}

Poly2 Poly2::compose_affine(const AffineMap2& f) const {
    const Poly2 xu = Poly2::monomial(1, 0, f.linear(0, 0)) +
                     Poly2::monomial(0, 1, f.linear(0, 1)) + Poly2::constant(f.shift(0));
    const Poly2 yu = Poly2::monomial(1, 0, f.linear(1, 0)) +
                     Poly2::monomial(0, 1, f.linear(1, 1)) + Poly2::constant(f.shift(1));
    // Powers of the two substituted linear forms, combined per coefficient.
    std::vector<Poly2> xp(deg_ + 1), yp(deg_ + 1);
    xp[0] = Poly2::constant(1.0);
    yp[0] = Poly2::constant(1.0);
    for (int i = 1; i <= deg_; ++i) {
        xp[i] = xp[i - 1] * xu;
        yp[i] = yp[i - 1] * yu;
    }
    Poly2 out(deg_);
    for (int g = 0; g <= deg_; ++g)
        for (int j = 0; j <= g; ++j) {
            const double a = c_[index(g - j, j)];
            if (a != 0.0)
                out = out + xp[g - j] * yp[j] * a;
        }
    return out;
}

int Poly2::effective_degree(double cutoff) const {
    for (int g = deg_; g >= 1; --g)
        for (int j = 0; j <= g; ++j)
            if (std::abs(c_[index(g - j, j)]) > cutoff)
                return g;
    return 0;
}

std::string Poly2::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int g = 0; g <= deg_; ++g)
        for (int j = 0; j <= g; ++j) {
            const double a = c_[index(g - j, j)];
            if (a == 0.0)
                continue;
            os << (first ? "" : " + ") << a;
            if (g - j > 0)
                os << "*x^" << (g - j);
            if (j > 0)
                os << "*y^" << j;
            first = false;
        }
    if (first)
        os << "0";
    return os.str();
}

double integrate_monomial(const Triangle& t, int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0)
        throw std::invalid_argument("barycentric exponents must be nonnegative");
    if (a + b + c > kMaxExponentSum)
        throw std::invalid_argument("barycentric exponent sum exceeds 60");
    const long double* fact = factorials();
    const long double num = fact[a] * fact[b] * fact[c];
    const long double val =
        2.0L * static_cast<long double>(t.signed_area()) * num / fact[a + b + c + 2];
    return static_cast<double>(val);
}

AffineMap2 reference_map(const Triangle& t) {
    AffineMap2 f;
    f.linear << t.v(1).x - t.v(0).x, t.v(2).x - t.v(0).x, t.v(1).y - t.v(0).y,
        t.v(2).y - t.v(0).y;
    f.shift << t.v(0).x, t.v(0).y;
    return f;
}

double integrate(const Poly2& p, const Triangle& t) {
    // Pull back to the reference triangle; int_ref u^a v^b = a! b! / (a+b+2)!.
    const Poly2 q = p.compose_affine(reference_map(t));
    const long double* fact = factorials();
    long double sum = 0.0L;
    for (int g = 0; g <= q.degree(); ++g)
        for (int j = 0; j <= g; ++j) {
            const double c = q.coeff(g - j, j);
            if (c != 0.0)
                sum += static_cast<long double>(c) * fact[g - j] * fact[j] / fact[g + 2];
        }
    return static_cast<double>(2.0L * static_cast<long double>(t.signed_area()) * sum);
}

double eval_diff(const Poly2& p, MultiIndex d, const Point2& at) {
    if (d.order() > p.degree())
        return 0.0;
    return p.derivative(d.dx, d.dy).eval(at);
}

double seminorm_p2_exact(const Poly2& p, int m, const Triangle& t) {
    return std::sqrt(std::max(0.0, seminorm_p2_bilinear(p, p, m, t)));
}

double seminorm_p2_bilinear(const Poly2& p, const Poly2& q, int m, const Triangle& t) {
    if (m < 0)
        throw std::invalid_argument("seminorm order must be nonnegative");
    double sum = 0.0;
    for (int dx = m; dx >= 0; --dx) {
        const int dy = m - dx;
        if (m > p.degree() || m > q.degree())
            continue;
        sum += integrate(p.derivative(dx, dy) * q.derivative(dx, dy), t);
    }
    return sum;
}

} // namespace triterp::poly
