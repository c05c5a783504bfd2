#include <doctest.h>

#include "triterp/polynomial.hpp"

#include <cmath>
#include <random>

using namespace triterp::poly;
using triterp::geom::Triangle;

namespace {
const Triangle kRef(0, 0, 1, 0, 0, 1);

Poly2 random_poly(std::mt19937_64& eng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Poly2 p(degree);
    for (int i = 0; i + 0 <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) p.set_coeff(i, j, u(eng));
    return p;
}
} // namespace

TEST_CASE("coefficient storage round trip") {
    Poly2 p(3);
    p.set_coeff(2, 1, 5.5);
    p.set_coeff(0, 0, -1.0);
    CHECK(p.coeff(2, 1) == 5.5);
    CHECK(p.coeff(0, 0) == -1.0);
    CHECK(p.coeff(1, 1) == 0.0);
    CHECK(p.coeff(10, 10) == 0.0); // out of range reads as zero
}

TEST_CASE("eval and arithmetic") {
    Poly2 x = Poly2::monomial(1, 0);
    Poly2 y = Poly2::monomial(0, 1);
    Poly2 p = x * x + y * 3.0 + Poly2::constant(2.0);
    CHECK(p.eval({2.0, 1.0}) == doctest::Approx(4 + 3 + 2).epsilon(1e-15));
    Poly2 q = p - p;
    CHECK(q.eval({0.37, -0.21}) == doctest::Approx(0.0));
    std::mt19937_64 eng(5);
    for (int it = 0; it < 200; ++it) {
        Poly2 a = random_poly(eng, 4);
        Poly2 b = random_poly(eng, 3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double px = u(eng), py = u(eng);
        CHECK((a * b).eval({px, py}) ==
              doctest::Approx(a.eval({px, py}) * b.eval({px, py})).epsilon(1e-12));
        CHECK((a + b).eval({px, py}) ==
              doctest::Approx(a.eval({px, py}) + b.eval({px, py})).epsilon(1e-12));
    }
}

TEST_CASE("derivative") {
    // d/dx (x^3 y) = 3 x^2 y ; d2/dxdy (x^3 y) = 3 x^2
    Poly2 p = Poly2::monomial(3, 1);
    Poly2 dx = p.derivative(1, 0);
    CHECK(dx.coeff(2, 1) == doctest::Approx(3.0));
    Poly2 dxy = p.derivative(1, 1);
    CHECK(dxy.coeff(2, 0) == doctest::Approx(3.0));
    CHECK(p.derivative(4, 0).effective_degree() == 0);
    CHECK(p.derivative(4, 0).coeff(0, 0) == 0.0);
}

TEST_CASE("barycentric monomial integrals on the reference triangle") {
    // int x = 1/6, int x^2 = 1/12, int x y = 1/24, int 1 = 1/2
    CHECK(integrate(Poly2::monomial(1, 0), kRef) ==
          doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(integrate(Poly2::monomial(2, 0), kRef) ==
          doctest::Approx(1.0 / 12).epsilon(1e-15));
    CHECK(integrate(Poly2::monomial(1, 1), kRef) ==
          doctest::Approx(1.0 / 24).epsilon(1e-15));
    CHECK(integrate(Poly2::constant(1.0), kRef) ==
          doctest::Approx(0.5).epsilon(1e-15));
    // lambda2 = x on the reference triangle
    CHECK(integrate_monomial(kRef, 0, 1, 0) ==
          doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(integrate_monomial(kRef, 0, 2, 0) ==
          doctest::Approx(1.0 / 12).epsilon(1e-15));
    CHECK(integrate_monomial(kRef, 1, 1, 1) ==
          doctest::Approx(2 * 0.5 / 120.0).epsilon(1e-15));
}

TEST_CASE("barycentric integral is permutation invariant") {
    Triangle t(0.2, -0.1, 1.7, 0.3, 0.4, 2.2);
    double base = integrate_monomial(t, 3, 1, 2);
    CHECK(integrate_monomial(t, 1, 3, 2) == doctest::Approx(base).epsilon(1e-15));
    CHECK(integrate_monomial(t, 2, 1, 3) == doctest::Approx(base).epsilon(1e-15));
    // and scales with area
    Triangle t2(0.4, -0.2, 3.4, 0.6, 0.8, 4.4); // dilated by 2
    CHECK(integrate_monomial(t2, 3, 1, 2) ==
          doctest::Approx(4 * base).epsilon(1e-14));
}

TEST_CASE("exponent cap") {
    CHECK_THROWS_AS(integrate_monomial(kRef, 61, 0, 0), std::invalid_argument);
    CHECK_NOTHROW(integrate_monomial(kRef, 20, 20, 20));
}

TEST_CASE("integration against closed forms on a shifted triangle") {
    // int over T of x with T = (1,1),(2,1),(1,2): reference shifted by (1,1);
    // int (u+1) over ref = 1/6 + 1/2 = 2/3
    Triangle t(1, 1, 2, 1, 1, 2);
    CHECK(integrate(Poly2::monomial(1, 0), t) ==
          doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("p2 seminorms, exact") {
    // |x|_{0,2} = sqrt(1/12); |x^2|_{1,2} = sqrt(int (2x)^2) = sqrt(1/3);
    // |xy|_{2,2} = sqrt(int 1^2) = sqrt(1/2); |x^2|_{2,2} = sqrt(int 2^2) = sqrt(2)
    CHECK(seminorm_p2_exact(Poly2::monomial(1, 0), 0, kRef) ==
          doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-14));
    CHECK(seminorm_p2_exact(Poly2::monomial(2, 0), 1, kRef) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(seminorm_p2_exact(Poly2::monomial(1, 1), 2, kRef) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(seminorm_p2_exact(Poly2::monomial(2, 0), 2, kRef) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // order above the degree vanishes
    CHECK(seminorm_p2_exact(Poly2::monomial(2, 0), 3, kRef) == 0.0);
}

TEST_CASE("bilinear form polarizes the seminorm") {
    std::mt19937_64 eng(17);
    Triangle t(0, 0, 1.3, 0.2, 0.4, 1.1);
    for (int it = 0; it < 50; ++it) {
        Poly2 p = random_poly(eng, 4);
        for (int m = 0; m <= 3; ++m) {
            double viaB = seminorm_p2_bilinear(p, p, m, t);
            double direct = seminorm_p2_exact(p, m, t);
            CHECK(std::sqrt(std::max(0.0, viaB)) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("compose affine") {
    AffineMap2 f;
    f.linear << 1, 2, 0, 1;
    f.shift << 1, 0;
    Poly2 p = Poly2::monomial(2, 0); // x^2 -> (x + 2y + 1)^2
    Poly2 q = p.compose_affine(f);
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 100; ++it) {
        Point2 at{u(eng), u(eng)};
        CHECK(q.eval(at) == doctest::Approx(p.eval(f(at))).epsilon(1e-13));
    }
    CHECK(q.coeff(0, 0) == doctest::Approx(1.0));
    CHECK(q.coeff(0, 2) == doctest::Approx(4.0));
    CHECK(q.coeff(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("reference map sends the reference triangle onto t") {
    Triangle t(0.5, -1.0, 2.0, 0.3, 1.0, 1.7);
    AffineMap2 f = reference_map(t);
    auto close = [](const triterp::geom::Point2& a,
                    const triterp::geom::Point2& b) {
        return std::abs(a.x - b.x) < 1e-14 && std::abs(a.y - b.y) < 1e-14;
    };
    CHECK(close(f({0, 0}), t.v(0)));
    CHECK(close(f({1, 0}), t.v(1)));
    CHECK(close(f({0, 1}), t.v(2)));
}

TEST_CASE("effective degree ignores tiny noise") {
    Poly2 p = Poly2::monomial(1, 0);
    p.set_coeff(3, 1, 1e-16);
    CHECK(p.effective_degree(1e-12) == 1);
    CHECK(p.effective_degree(0.0) == 4);
}

TEST_CASE("eval_diff") {
    Poly2 p = Poly2::monomial(2, 1); // x^2 y
    CHECK(eval_diff(p, {1, 0}, {2.0, 3.0}) == doctest::Approx(12.0)); // 2xy
    CHECK(eval_diff(p, {2, 1}, {5.0, -1.0}) == doctest::Approx(2.0));
    CHECK(eval_diff(p, {0, 2}, {5.0, -1.0}) == doctest::Approx(0.0));
}
