#include "triterp/bconst.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace triterp::bconst {

namespace {

void check_orders(int m, int k) {
    if (k < 1 || k > interp::kMaxOrder)
        throw std::invalid_argument("k must be in 1..5");
    if (m < 0 || m > k + 1)
        throw std::invalid_argument("m must be in 0..k+1");
}

// Box-Muller over the raw engine stream; keeps sampled runs bit-reproducible
// across standard libraries (std::normal_distribution is not pinned).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double gauss() {
        double u1 = uniform();
        while (u1 == 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

// Homogeneous monomials of degree k+1 followed by degree k+2; see the
// RayleighProblem comment in the header for why both degrees are needed.
std::vector<Poly2> test_basis(int k) {
    std::vector<Poly2> h;
    for (int d = k + 1; d <= k + 2; ++d)
        for (int j = 0; j <= d; ++j)
            h.push_back(Poly2::monomial(d - j, j));
    return h;
}

Poly2 combine(const std::vector<Poly2>& basis, const Eigen::VectorXd& c) {
    Poly2 h;
    for (int j = 0; j < c.size(); ++j)
        h = h + basis[j] * c(j);
    return h;
}

double ratio_of_coeffs(const std::vector<Poly2>& basis, const Eigen::VectorXd& c,
                       int m, int k, double p, const Triangle& t) {
    const double n = c.norm();
    if (n == 0.0)
        return 0.0;
    return candidate_ratio(combine(basis, c / n), m, k, p, t);
}

} // namespace

RayleighProblem rayleigh_problem(int m, int k, const Triangle& t) {
    check_orders(m, k);
    const auto basis = test_basis(k);
    const int n = static_cast<int>(basis.size());
    std::vector<Poly2> err;
    err.reserve(n);
    for (const auto& h : basis)
        err.push_back(interp::error_poly(h, k, t));

    RayleighProblem rp{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), m, k};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            rp.M(i, j) = rp.M(j, i) = poly::seminorm_p2_bilinear(err[i], err[j], m, t);
            rp.N(i, j) = rp.N(j, i) =
                poly::seminorm_p2_bilinear(basis[i], basis[j], k + 1, t);
        }
    return rp;
}

BEstimate b_poly_lower(int m, int k, const Triangle& t) {
    const RayleighProblem rp = rayleigh_problem(m, k, t);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(rp.M, rp.N);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("generalized eigensolve failed");
    const int top = static_cast<int>(rp.M.rows()) - 1;
    const double lambda = std::max(0.0, es.eigenvalues()(top));
    BEstimate est;
    est.value = std::sqrt(lambda);
    est.maximizer = combine(test_basis(k), es.eigenvectors().col(top));
    est.method = "eigen-p2";
    return est;
}

double candidate_ratio(const Poly2& h, int m, int k, double p, const Triangle& t) {
    check_orders(m, k);
    const Poly2 e = interp::error_poly(h, k, t);
    const double num = norms::sobolev_seminorm(norms::field_from_poly(e), m, p, t,
                                               std::max(0, e.degree() - m));
    const double den =
        norms::sobolev_seminorm(norms::field_from_poly(h), k + 1, p, t,
                                std::max(1, h.degree() - (k + 1)));
    if (den == 0.0)
        return 0.0;
    return num / den;
}

BEstimate b_sample_lower(int m, int k, double p, const Triangle& t, int samples,
                         std::uint64_t seed) {
    check_orders(m, k);
    if (samples < 1)
        throw std::invalid_argument("sample count must be positive");
    const auto basis = test_basis(k);
    const int n = static_cast<int>(basis.size());
    Rng rng(seed);

    // Axis directions first (cheap, deterministic anchors), then the random
    // sphere sample.
    Eigen::VectorXd best = Eigen::VectorXd::Unit(n, 0);
    double best_val = -1.0;
    auto consider = [&](const Eigen::VectorXd& c) {
        const double v = ratio_of_coeffs(basis, c, m, k, p, t);
        if (v > best_val) {
            best_val = v;
            best = c / c.norm();
        }
    };
    for (int j = 0; j < n; ++j)
        consider(Eigen::VectorXd::Unit(n, j));
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd c(n);
        for (int j = 0; j < n; ++j)
            c(j) = rng.gauss();
        if (c.norm() == 0.0)
            continue;
        consider(c);
    }

    // 50 coordinate line searches by golden section around the incumbent.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int step = 0; step < 50; ++step) {
        const int coord = step % n;
        double lo = best(coord) - 1.0, hi = best(coord) + 1.0;
        auto eval = [&](double x) {
            Eigen::VectorXd c = best;
            c(coord) = x;
            return ratio_of_coeffs(basis, c, m, k, p, t);
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = eval(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = eval(x1);
            }
        }
        const double xm = (lo + hi) / 2.0;
        const double fm = eval(xm);
        if (fm > best_val) {
            best_val = fm;
            best(coord) = xm;
            best /= best.norm();
        }
    }

    BEstimate est;
    est.value = best_val;
    est.maximizer = combine(basis, best);
    est.method = "sampled";
    return est;
}

double bound_ratio(const BEstimate& est, const TriangleMetrics& met, int m, int k) {
    return est.value / (std::pow(met.R, m) * std::pow(met.hK, k + 1 - 2 * m));
}

} // namespace triterp::bconst
