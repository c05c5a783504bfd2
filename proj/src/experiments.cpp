#include "triterp/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace triterp::experiments {

namespace {

constexpr double kPi = 3.14159265358979323846;

FieldWithDerivatives interp_error_field(const FieldWithDerivatives& v, int k,
                                        const Triangle& t) {
    const interp::NodeSet set = interp::nodes(k, t);
    std::vector<double> values(set.nodes.size());
    for (size_t i = 0; i < set.nodes.size(); ++i)
        values[i] = v.value(set.nodes[i].p.x, set.nodes[i].p.y);
    const poly::Poly2 ip = interp::interpolate(values, k, t);
    return norms::field_difference(v, norms::field_from_poly(ip, "I_k"));
}

} // namespace

FamilySpec alpha_beta_family(double alpha, double beta) {
    if (!(1.0 < alpha && alpha < beta && beta < 1.0 + alpha))
        throw std::invalid_argument(
            "alpha-beta family requires 1 < alpha < beta < 1 + alpha");
    return {FamilyKind::AlphaBeta, alpha, beta};
}

FamilySpec squeeze_family() { return {FamilyKind::Squeeze}; }

FamilySpec theta_family() { return {FamilyKind::ThetaSweep}; }

Triangle family_triangle(const FamilySpec& spec, double param) {
    switch (spec.kind) {
    case FamilyKind::AlphaBeta:
        if (!(param > 0.0 && param < 1.0))
            throw std::invalid_argument("alpha-beta family requires 0 < h < 1");
        return Triangle(0.0, 0.0, param, 0.0, std::pow(param, spec.alpha),
                        std::pow(param, spec.beta));
    case FamilyKind::Squeeze:
        if (!(param > 0.0 && param <= 1.0))
            throw std::invalid_argument("squeeze family requires 0 < alpha <= 1");
        return Triangle(0.0, 0.0, 1.0, 0.0, 0.0, param);
    case FamilyKind::ThetaSweep:
        // below pi/3 the apex angle is no longer the maximum angle and the
        // sweep parameter would stop meaning what it claims
        if (!(param >= kPi / 3 && param < kPi))
            throw std::invalid_argument("theta family requires pi/3 <= theta < pi");
        return Triangle(0.0, 0.0, 1.0, 0.0, std::cos(param), std::sin(param));
    }
    throw std::invalid_argument("unknown family kind");
}

SweepResult sweep_rate(const FamilySpec& spec, const FieldWithDerivatives& v, int k,
                       int m, double p, std::span<const double> hs, double scale) {
    if (hs.size() < 3)
        throw std::invalid_argument("rate sweep needs at least 3 family parameters");
    for (size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] < hs[i - 1]))
            throw std::invalid_argument("family parameters must decrease (coarse to fine)");

    const FieldWithDerivatives field =
        scale == 1.0 ? v : norms::field_rescaled(v, scale);

    SweepResult res{};
    for (double h : hs) {
        Triangle t0 = family_triangle(spec, h);
        const Triangle t =
            scale == 1.0
                ? t0
                : Triangle(scale * t0.v(0).x, scale * t0.v(0).y, scale * t0.v(1).x,
                           scale * t0.v(1).y, scale * t0.v(2).x, scale * t0.v(2).y);

        SweepRow row{};
        row.param = h;
        row.met = geom::metrics(t);
        const FieldWithDerivatives err = interp_error_field(field, k, t);
        row.error_seminorm = norms::sobolev_seminorm(err, m, p, t, k + 1 - m);
        row.field_seminorm = norms::sobolev_seminorm(field, k + 1, p, t, 1);
        // 0/0 guard: for v in P_k both seminorms vanish; report the error
        // seminorm itself so reproduction rows stay meaningful.
        row.ratio = row.field_seminorm > 1e-300 ? row.error_seminorm / row.field_seminorm
                                                : row.error_seminorm;
        row.bound_standard = std::pow(row.met.hK, k + 1) / std::pow(row.met.rho, m);
        row.bound_circum =
            std::pow(row.met.R, m) * std::pow(row.met.hK, k + 1 - 2 * m);
        row.bound_jamet = std::pow(row.met.hK, k + 1 - m) /
                          std::pow(std::cos(row.met.theta_max / 2.0), m);
        row.rate_local = std::numeric_limits<double>::quiet_NaN();
        if (!res.rows.empty()) {
            const SweepRow& prev = res.rows.back();
            row.rate_local = std::log(row.ratio / prev.ratio) / std::log(h / prev.param);
        }
        res.rows.push_back(row);
    }

    // Drop the two coarsest rows (pre-asymptotic) but keep >= 2 fit points.
    res.dropped = std::min<int>(2, static_cast<int>(hs.size()) - 2);
    std::vector<double> hcol, ratio, bs, bc, bj;
    for (const SweepRow& r : res.rows) {
        hcol.push_back(r.param);
        ratio.push_back(r.ratio);
        bs.push_back(r.bound_standard);
        bc.push_back(r.bound_circum);
        bj.push_back(r.bound_jamet);
    }
    res.rate_measured = fit_loglog(hcol, ratio, res.dropped);
    res.rate_standard = fit_loglog(hcol, bs, res.dropped);
    res.rate_circum = fit_loglog(hcol, bc, res.dropped);
    res.rate_jamet = fit_loglog(hcol, bj, res.dropped);
    res.convergent_measured = res.rate_measured > 0.0;
    res.convergent_standard = res.rate_standard > 0.0;
    return res;
}

std::vector<SqueezeRow> squeeze_sweep(std::span<const double> alphas, int m, int k,
                                      double p, int samples, std::uint64_t seed) {
    const FamilySpec spec = squeeze_family();
    std::vector<SqueezeRow> rows;
    for (double a : alphas) {
        const Triangle t = family_triangle(spec, a);
        SqueezeRow row{a, geom::metrics(t), {}, 0.0};
        row.est = p == 2.0 ? bconst::b_poly_lower(m, k, t)
                           : bconst::b_sample_lower(m, k, p, t, samples, seed);
        row.bound_ratio = bconst::bound_ratio(row.est, row.met, m, k);
        rows.push_back(row);
    }
    return rows;
}

ThetaSweepResult theta_sweep(std::span<const double> thetas, int m, int k) {
    const FamilySpec spec = theta_family();
    ThetaSweepResult res{};
    std::vector<double> gap, ratio;
    for (double th : thetas) {
        const Triangle t = family_triangle(spec, th);
        ThetaRow row{th, geom::metrics(t), 0.0, 0.0};
        row.b_lower = bconst::b_poly_lower(m, k, t).value;
        row.bound_ratio = row.b_lower / (std::pow(row.met.R, m) *
                                         std::pow(row.met.hK, k + 1 - 2 * m));
        res.rows.push_back(row);
        gap.push_back(kPi - th);
        ratio.push_back(row.bound_ratio);
    }
    res.ratio_max = res.ratio_min = res.rows.front().bound_ratio;
    for (const ThetaRow& r : res.rows) {
        res.ratio_max = std::max(res.ratio_max, r.bound_ratio);
        res.ratio_min = std::min(res.ratio_min, r.bound_ratio);
    }
    res.trend_slope = fit_loglog(gap, ratio, 0);
    return res;
}

std::pair<double, double> jamet_compare(const Triangle& t, int m) {
    return jamet_factors_theta(geom::metrics(t).theta_max, m);
}

std::pair<double, double> jamet_factors_theta(double theta, int m) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::invalid_argument("theta must be in (0, pi)");
    if (m < 0)
        throw std::invalid_argument("m must be nonnegative");
    return {std::pow(std::cos(theta / 2.0), -m), std::pow(std::sin(theta), -m)};
}

double fit_loglog(std::span<const double> x, std::span<const double> y, int drop) {
    const size_t n = x.size();
    if (n != y.size() || drop < 0 || static_cast<int>(n) - drop < 2)
        throw std::invalid_argument("log-log fit needs at least 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    size_t cnt = 0;
    for (size_t i = drop; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace triterp::experiments
