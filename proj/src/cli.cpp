#include "triterp/cli.hpp"

#include "triterp/experiments.hpp"
#include "triterp/fem.hpp"
#include "triterp/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace triterp::cli {

namespace {

using geom::Triangle;
using nlohmann::json;
using report::Cell;
using report::Table;

double parse_p(const std::string& s) {
    std::string low;
    for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "inf" || low == "infinity") return norms::kInf;
    size_t pos = 0;
    double v = std::stod(s, &pos); // throws invalid_argument on garbage
    if (pos != s.size()) throw std::invalid_argument("malformed value for p: " + s);
    if (v < 1.0) throw std::invalid_argument("p must be >= 1 or inf");
    return v;
}

Cell p_cell(double p) {
    if (std::isinf(p)) return std::string("inf");
    return p;
}

Triangle triangle_from(const std::vector<double>& c) {
    return Triangle(c[0], c[1], c[2], c[3], c[4], c[5]);
}

norms::FieldWithDerivatives pick_field(const std::string& name) {
    if (name == "x2") return norms::field_x_squared();
    if (name == "sinsin") return norms::field_sin_product();
    throw std::invalid_argument("unknown field: " + name + " (use x2 or sinsin)");
}

void emit_json(const json& j, const std::string& path, std::ostream& fallback) {
    if (path == "-" || path.empty()) {
        report::write_json(j, fallback);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    report::write_json(j, os);
}

struct CommonOut {
    std::string out = "-";
    std::string summary = "-";
};

void add_out_flags(CLI::App* sub, CommonOut& o, bool with_summary) {
    sub->add_option("--out", o.out, "table destination: a file path, or - for stdout");
    if (with_summary)
        sub->add_option("--summary", o.summary,
                        "summary JSON destination: a file path, or - for stdout");
}

int run_metrics(const std::vector<double>& coords, const CommonOut& o,
                std::ostream& out) {
    auto met = geom::metrics(triangle_from(coords));
    Table t;
    t.header = {"h1", "h2", "hK", "S", "R", "rho", "theta_min", "theta_max",
                "chunkiness", "semiregularity"};
    t.add_row({met.h1, met.h2, met.hK, met.S, met.R, met.rho, met.theta_min,
               met.theta_max, met.chunkiness, met.semiregularity});
    report::write_report(t, o.out, report::Format::Csv, out);
    return 0;
}

int run_interp_error(const std::vector<double>& coords, int k, int m,
                     const std::string& p_text, const std::string& field_name,
                     const CommonOut& o, std::ostream& out) {
    double p = parse_p(p_text);
    Triangle tri = triangle_from(coords);
    auto met = geom::metrics(tri);
    auto f = pick_field(field_name);

    auto ns = interp::nodes(k, tri);
    std::vector<double> vals;
    vals.reserve(ns.nodes.size());
    for (const auto& nd : ns.nodes) vals.push_back(f.value(nd.p.x, nd.p.y));
    auto ih = norms::field_from_poly(interp::interpolate(vals, k, tri), "interp");
    double err = norms::sobolev_seminorm(norms::field_difference(f, ih), m, p, tri);
    double den = norms::sobolev_seminorm(f, k + 1, p, tri);
    double ratio = den > 0 ? err / den : err;

    double bound_standard = std::pow(met.hK, k + 1) / std::pow(met.rho, m);
    double bound_circum = std::pow(met.R, m) * std::pow(met.hK, k + 1 - 2 * m);
    double bound_jamet =
        std::pow(met.hK, k + 1 - m) / std::pow(std::cos(met.theta_max / 2.0), m);

    Table t;
    t.header = {"k", "m", "p", "hK", "R", "rho", "theta_max", "error_seminorm",
                "field_seminorm", "ratio", "bound_standard", "bound_circum",
                "bound_jamet"};
    t.add_row({static_cast<long long>(k), static_cast<long long>(m), p_cell(p),
               met.hK, met.R, met.rho, met.theta_max, err, den, ratio,
               bound_standard, bound_circum, bound_jamet});
    report::write_report(t, o.out, report::Format::Csv, out);
    return 0;
}

int run_bconst(const std::vector<double>& coords, int m, int k,
               const std::string& p_text, int samples, std::uint64_t seed,
               const CommonOut& o, std::ostream& out) {
    double p = parse_p(p_text);
    Triangle tri = triangle_from(coords);
    auto met = geom::metrics(tri);
    bconst::BEstimate est = (p == 2.0) ? bconst::b_poly_lower(m, k, tri)
                                       : bconst::b_sample_lower(m, k, p, tri,
                                                                samples, seed);
    Table t;
    t.header = {"m", "k", "p", "hK", "R", "rho", "theta_max", "B_lower",
                "bound_ratio", "method"};
    t.add_row({static_cast<long long>(m), static_cast<long long>(k), p_cell(p),
               met.hK, met.R, met.rho, met.theta_max, est.value,
               bconst::bound_ratio(est, met, m, k), est.method});
    report::write_report(t, o.out, report::Format::Csv, out);
    return 0;
}

int run_family(double alpha, double beta, int k, int m,
               const std::string& p_text, double hmin, double scale,
               const std::string& field_name, const CommonOut& o,
               std::ostream& out) {
    double p = parse_p(p_text);
    auto spec = experiments::alpha_beta_family(alpha, beta);
    auto f = pick_field(field_name);

    std::vector<double> hs;
    for (double h = 0.125; h >= hmin * (1.0 - 1e-12); h /= 2.0) hs.push_back(h);
    auto res = experiments::sweep_rate(spec, f, k, m, p, hs, scale);

    Table t;
    t.header = {"h", "hK", "R", "rho", "theta_max", "ratio_measured",
                "bound_standard", "bound_circum", "bound_jamet", "rate_local"};
    for (const auto& row : res.rows)
        t.add_row({row.param, row.met.hK, row.met.R, row.met.rho,
                   row.met.theta_max, row.ratio, row.bound_standard,
                   row.bound_circum, row.bound_jamet, row.rate_local});
    report::write_report(t, o.out, report::Format::Csv, out);

    json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["k"] = k;
    j["m"] = m;
    j["p"] = std::isinf(p) ? json("inf") : json(p);
    j["hmin"] = hmin;
    j["scale"] = scale;
    j["dropped"] = res.dropped;
    j["fitted_rate"] = res.rate_measured;
    j["rate_standard"] = res.rate_standard;
    j["rate_circum"] = res.rate_circum;
    j["rate_jamet"] = res.rate_jamet;
    j["convergent_measured"] = res.convergent_measured;
    j["convergent_standard"] = res.convergent_standard;
    j["predicted_circum"] = m * (1.0 + alpha - beta) + (k + 1 - 2 * m);
    j["predicted_standard"] = (k + 1) - m * beta;
    emit_json(j, o.summary, out);
    return 0;
}

int run_squeeze(const std::vector<double>& alphas, int m, int k,
                const std::string& p_text, int samples, std::uint64_t seed,
                const CommonOut& o, std::ostream& out) {
    double p = parse_p(p_text);
    auto rows = experiments::squeeze_sweep(alphas, m, k, p, samples, seed);
    Table t;
    t.header = {"alpha", "hK", "R", "rho", "theta_max", "B_lower",
                "bound_ratio", "method"};
    for (const auto& row : rows)
        t.add_row({row.alpha, row.met.hK, row.met.R, row.met.rho,
                   row.met.theta_max, row.est.value, row.bound_ratio,
                   row.est.method});
    report::write_report(t, o.out, report::Format::Csv, out);
    return 0;
}

int run_fem(double q, const std::vector<int>& ns, const std::string& mesh_out,
            const CommonOut& o, std::ostream& out) {
    auto study = fem::convergence_study(q, ns);
    Table t;
    t.header = {"n", "a", "b", "maxR", "maxTheta", "maxChunk", "h1err", "l2err",
                "interpErr"};
    for (const auto& r : study.runs)
        t.add_row({static_cast<long long>(r.n), r.a, r.b, r.quality.max_R,
                   r.quality.max_theta, r.quality.max_chunkiness, r.h1_err,
                   r.l2_err, r.interp_err});
    report::write_report(t, o.out, report::Format::Csv, out);

    if (!mesh_out.empty()) {
        std::filesystem::create_directories(mesh_out);
        for (int n : ns) {
            auto mesh = fem::gen_aniso_mesh(n, q);
            std::ofstream os(std::filesystem::path(mesh_out) /
                             ("mesh_n" + std::to_string(n) + ".txt"));
            if (!os) throw std::runtime_error("cannot write mesh file");
            fem::write_mesh(mesh, os);
        }
    }

    json j;
    j["q"] = q;
    json narr = json::array();
    for (int n : ns) narr.push_back(n);
    j["n"] = narr;
    j["h1_rate"] = study.h1_rate;
    j["l2_rate"] = study.l2_rate;
    j["interp_rate"] = study.interp_rate;
    emit_json(j, o.summary, out);
    return 0;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"triangle interpolation error bounds: metrics, interpolation "
                 "errors, lower-bound constants, degenerating-family sweeps, "
                 "and a P1 Poisson demonstrator"};
    app.require_subcommand(1);
    int quad_bump = norms::quad_degree_bump();
    app.add_option("--quad-bump", quad_bump,
                   "extra quadrature degree added to every rule (safety margin)");

    // metrics
    std::vector<double> m_coords;
    CommonOut m_out;
    auto* sub_metrics =
        app.add_subcommand("metrics", "shape metrics of one triangle");
    sub_metrics
        ->add_option("coords", m_coords,
                     "vertex coordinates x1 y1 x2 y2 x3 y3")
        ->expected(6)
        ->required();
    add_out_flags(sub_metrics, m_out, false);

    // interp-error
    std::vector<double> ie_coords;
    int ie_k = 1, ie_m = 1;
    std::string ie_p = "2", ie_field = "x2";
    CommonOut ie_out;
    auto* sub_ie = app.add_subcommand(
        "interp-error",
        "seminorm of v - I_k v on one triangle, with the shape-dependent bounds");
    sub_ie->add_option("coords", ie_coords, "vertex coordinates x1 y1 x2 y2 x3 y3")
        ->expected(6)
        ->required();
    sub_ie->add_option("--k", ie_k, "interpolation order (1..5)")
        ->check(CLI::Range(1, interp::kMaxOrder));
    sub_ie->add_option("--m", ie_m, "derivative order of the error seminorm");
    sub_ie->add_option("--p", ie_p, "Lebesgue exponent (>= 1, or inf)");
    sub_ie->add_option("--field", ie_field, "test field: x2 or sinsin");
    add_out_flags(sub_ie, ie_out, false);

    // bconst
    std::vector<double> bc_coords;
    int bc_m = 1, bc_k = 1, bc_samples = 400;
    std::string bc_p = "2";
    std::uint64_t bc_seed = 0;
    CommonOut bc_out;
    auto* sub_bc = app.add_subcommand(
        "bconst", "lower bound for the interpolation constant on one triangle");
    sub_bc->add_option("coords", bc_coords, "vertex coordinates x1 y1 x2 y2 x3 y3")
        ->expected(6)
        ->required();
    sub_bc->add_option("--m", bc_m, "seminorm derivative order");
    sub_bc->add_option("--k", bc_k, "interpolation order (1..5)")
        ->check(CLI::Range(1, interp::kMaxOrder));
    sub_bc->add_option("--p", bc_p, "Lebesgue exponent (>= 1, or inf)");
    sub_bc->add_option("--samples", bc_samples,
                       "direction samples when p != 2 (sampled lower bound)");
    sub_bc->add_option("--seed", bc_seed, "RNG seed for the sampled bound");
    add_out_flags(sub_bc, bc_out, false);

    // family
    double fam_alpha = 1.5, fam_beta = 2.2, fam_hmin = 0.0009765625,
           fam_scale = 1.0;
    int fam_k = 1, fam_m = 1;
    std::string fam_p = "2", fam_field = "x2";
    CommonOut fam_out;
    auto* sub_fam = app.add_subcommand(
        "family",
        "interpolation-error rate sweep along the (0,0),(h,0),(h^a,h^b) family");
    sub_fam->add_option("--alpha", fam_alpha, "exponent a, must satisfy 1 < a");
    sub_fam->add_option("--beta", fam_beta,
                        "exponent b, must satisfy a < b < 1 + a");
    sub_fam->add_option("--k", fam_k, "interpolation order (1..5)")
        ->check(CLI::Range(1, interp::kMaxOrder));
    sub_fam->add_option("--m", fam_m, "error seminorm derivative order");
    sub_fam->add_option("--p", fam_p, "Lebesgue exponent (>= 1, or inf)");
    sub_fam->add_option("--hmin", fam_hmin,
                        "smallest h; the sweep halves h from 1/8 down to here");
    sub_fam->add_option("--scale", fam_scale,
                        "dilation applied to every triangle (rate invariance check)");
    sub_fam->add_option("--field", fam_field, "test field: x2 or sinsin");
    add_out_flags(sub_fam, fam_out, true);

    // squeeze
    std::vector<double> sq_alphas{1.0, 0.5, 0.1, 0.01};
    int sq_m = 1, sq_k = 1, sq_samples = 400;
    std::string sq_p = "2";
    std::uint64_t sq_seed = 0;
    CommonOut sq_out;
    auto* sub_sq = app.add_subcommand(
        "squeeze",
        "lower-bound constants on right triangles (0,0),(1,0),(0,alpha)");
    sub_sq->add_option("--alphas", sq_alphas, "list of alpha values")
        ->delimiter(',');
    sub_sq->add_option("--m", sq_m, "seminorm derivative order");
    sub_sq->add_option("--k", sq_k, "interpolation order (1..5)")
        ->check(CLI::Range(1, interp::kMaxOrder));
    sub_sq->add_option("--p", sq_p, "Lebesgue exponent (>= 1, or inf)");
    sub_sq->add_option("--samples", sq_samples,
                       "direction samples when p != 2 (sampled lower bound)");
    sub_sq->add_option("--seed", sq_seed, "RNG seed for the sampled bound");
    add_out_flags(sub_sq, sq_out, false);

    // fem
    double fem_q = 1.2;
    std::vector<int> fem_ns{4, 8, 16, 32};
    std::string fem_mesh_out;
    CommonOut fem_out;
    auto* sub_fem = app.add_subcommand(
        "fem",
        "P1 Poisson convergence on criss-cross meshes with row height 1/n^q");
    sub_fem->add_option("--q", fem_q, "anisotropy exponent (rows = round(n^q))");
    sub_fem->add_option("--n", fem_ns, "list of column counts")->delimiter(',');
    sub_fem->add_option("--mesh-out", fem_mesh_out,
                        "directory for mesh_n{n}.txt text exports");
    add_out_flags(sub_fem, fem_out, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        norms::set_quad_degree_bump(quad_bump);
        if (sub_metrics->parsed()) return run_metrics(m_coords, m_out, out);
        if (sub_ie->parsed())
            return run_interp_error(ie_coords, ie_k, ie_m, ie_p, ie_field,
                                    ie_out, out);
        if (sub_bc->parsed())
            return run_bconst(bc_coords, bc_m, bc_k, bc_p, bc_samples, bc_seed,
                              bc_out, out);
        if (sub_fam->parsed())
            return run_family(fam_alpha, fam_beta, fam_k, fam_m, fam_p,
                              fam_hmin, fam_scale, fam_field, fam_out, out);
        if (sub_sq->parsed())
            return run_squeeze(sq_alphas, sq_m, sq_k, sq_p, sq_samples, sq_seed,
                               sq_out, out);
        if (sub_fem->parsed())
            return run_fem(fem_q, fem_ns, fem_mesh_out, fem_out, out);
        err << "error: no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}

} // namespace triterp::cli
