#include "triterp/fem.hpp"

#include "triterp/experiments.hpp"
#include "triterp/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace triterp::fem {

namespace {

constexpr double kPi = 3.14159265358979323846;

geom::Triangle element(const Mesh& mesh, size_t e) {
    const auto& t = mesh.tris[e];
    return geom::Triangle(mesh.vertices[t[0]], mesh.vertices[t[1]],
                          mesh.vertices[t[2]]);
}

// Barycentric gradient coefficients: grad lambda_i = (b_i, c_i) / (2S).
struct P1Gradients {
    double b[3], c[3], S;
};

P1Gradients p1_gradients(const Mesh& mesh, const std::array<int, 3>& t) {
    const Point2& p0 = mesh.vertices[t[0]];
    const Point2& p1 = mesh.vertices[t[1]];
    const Point2& p2 = mesh.vertices[t[2]];
    P1Gradients g;
    g.b[0] = p1.y - p2.y;
    g.b[1] = p2.y - p0.y;
    g.b[2] = p0.y - p1.y;
    g.c[0] = p2.x - p1.x;
    g.c[1] = p0.x - p2.x;
    g.c[2] = p1.x - p0.x;
    g.S = 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x));
    return g;
}

SparseSystem assemble_impl(const Mesh& mesh, const FieldWithDerivatives& f,
                           bool apply_bc) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<std::map<int, double>> rows(n);
    std::vector<double> rhs(n, 0.0);

    const auto& rule = norms::quad_rule(
        std::clamp(4 + norms::quad_degree_bump(), 1, norms::kMaxQuadDegree));

    for (const auto& t : mesh.tris) {
        const P1Gradients g = p1_gradients(mesh, t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                rows[t[i]][t[j]] += (g.b[i] * g.b[j] + g.c[i] * g.c[j]) / (4.0 * g.S);
        for (size_t q = 0; q < rule.size(); ++q) {
            const auto& lam = rule.bary[q];
            const double x = lam[0] * mesh.vertices[t[0]].x +
                             lam[1] * mesh.vertices[t[1]].x +
                             lam[2] * mesh.vertices[t[2]].x;
            const double y = lam[0] * mesh.vertices[t[0]].y +
                             lam[1] * mesh.vertices[t[1]].y +
                             lam[2] * mesh.vertices[t[2]].y;
            const double fw = g.S * rule.weights[q] * f.value(x, y);
            for (int i = 0; i < 3; ++i)
                rhs[t[i]] += fw * lam[i];
        }
    }

    if (apply_bc) {
        // Homogeneous Dirichlet: identity row, zeroed column couplings.
        for (int i = 0; i < n; ++i) {
            if (mesh.boundary[i]) {
                rows[i].clear();
                rows[i][i] = 1.0;
                rhs[i] = 0.0;
            } else {
                for (auto it = rows[i].begin(); it != rows[i].end();)
                    it = mesh.boundary[it->first] ? rows[i].erase(it) : ++it;
            }
        }
    }

    SparseSystem sys;
    sys.n = n;
    sys.rhs = std::move(rhs);
    sys.row_ptr.reserve(n + 1);
    sys.row_ptr.push_back(0);
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, v] : rows[i]) {
            sys.cols.push_back(j);
            sys.vals.push_back(v);
        }
        sys.row_ptr.push_back(static_cast<int>(sys.cols.size()));
    }
    return sys;
}

} // namespace

Mesh gen_aniso_mesh(int n, double q) {
    if (n < 1)
        throw std::invalid_argument("column count must be positive");
    if (q < 0.0)
        throw std::invalid_argument("height exponent must be nonnegative");
    const double rows_exact = std::pow(static_cast<double>(n), q);
    if (rows_exact > 5e6)
        throw std::invalid_argument("row count overflow (b too small)");
    const int rows = std::max(1, static_cast<int>(std::llround(rows_exact)));
    const double a = 1.0 / n;
    const double b = 1.0 / rows;

    Mesh mesh;
    mesh.vertices.reserve(static_cast<size_t>(n + 1) * (rows + 1) +
                          static_cast<size_t>(n) * rows);
    for (int j = 0; j <= rows; ++j)
        for (int i = 0; i <= n; ++i) {
            mesh.vertices.push_back({i * a, j * b});
            mesh.boundary.push_back(i == 0 || i == n || j == 0 || j == rows);
        }
    const int grid = (n + 1) * (rows + 1);
    auto gv = [n](int i, int j) { return j * (n + 1) + i; };

    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < n; ++i) {
            const int center = grid + j * n + i;
            mesh.vertices.push_back({(i + 0.5) * a, (j + 0.5) * b});
            mesh.boundary.push_back(0);
            const int bl = gv(i, j), br = gv(i + 1, j);
            const int tl = gv(i, j + 1), tr = gv(i + 1, j + 1);
            mesh.tris.push_back({bl, br, center});
            mesh.tris.push_back({br, tr, center});
            mesh.tris.push_back({tr, tl, center});
            mesh.tris.push_back({tl, bl, center});
        }
    return mesh;
}

double SparseSystem::at(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (cols[k] == j)
            return vals[k];
    return 0.0;
}

std::vector<double> SparseSystem::multiply(std::span<const double> x) const {
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            acc += vals[k] * x[cols[k]];
        y[i] = acc;
    }
    return y;
}

SparseSystem assemble(const Mesh& mesh, const FieldWithDerivatives& f) {
    return assemble_impl(mesh, f, true);
}

SparseSystem assemble_unconstrained(const Mesh& mesh, const FieldWithDerivatives& f) {
    return assemble_impl(mesh, f, false);
}

std::vector<double> solve_cg(const SparseSystem& sys, double tol, int max_iter,
                             int* iterations) {
    const int n = sys.n;
    std::vector<double> x(n, 0.0), r = sys.rhs, z(n), pdir(n), Ap(n);
    std::vector<double> dinv(n);
    for (int i = 0; i < n; ++i) {
        const double d = sys.at(i, i);
        if (d <= 0.0)
            throw std::runtime_error("nonpositive diagonal in CG preconditioner");
        dinv[i] = 1.0 / d;
    }
    auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) // fixed order, deterministic
            s += a[i] * b[i];
        return s;
    };
    const double rhs_norm = std::sqrt(dot(sys.rhs, sys.rhs));
    if (rhs_norm == 0.0) {
        if (iterations)
            *iterations = 0;
        return x;
    }
    for (int i = 0; i < n; ++i)
        z[i] = dinv[i] * r[i];
    pdir = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        Ap = sys.multiply(pdir);
        const double alpha = rz / dot(pdir, Ap);
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * pdir[i];
            r[i] -= alpha * Ap[i];
        }
        if (std::sqrt(dot(r, r)) <= tol * rhs_norm) {
            if (iterations)
                *iterations = it;
            return x;
        }
        for (int i = 0; i < n; ++i)
            z[i] = dinv[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i)
            pdir[i] = z[i] + beta * pdir[i];
    }
    std::ostringstream msg;
    msg << "CG did not converge in " << max_iter
        << " iterations; final relative residual "
        << std::sqrt(dot(r, r)) / rhs_norm;
    throw std::runtime_error(msg.str());
}

namespace {

// |u - p1|^p_{m,p,K} with p1 given by vertex values; shared by the error
// norms below.  m <= 1 because u_h has no curvature to compare beyond that.
double element_error_pow(const Mesh& mesh, size_t e, const FieldWithDerivatives& u,
                         std::span<const double> nodal, int m, double p,
                         const norms::QuadratureRule& rule) {
    const auto& t = mesh.tris[e];
    const P1Gradients g = p1_gradients(mesh, t);
    const double v0 = nodal[t[0]], v1 = nodal[t[1]], v2 = nodal[t[2]];
    const double gx = (v0 * g.b[0] + v1 * g.b[1] + v2 * g.b[2]) / (2.0 * g.S);
    const double gy = (v0 * g.c[0] + v1 * g.c[1] + v2 * g.c[2]) / (2.0 * g.S);

    double acc = 0.0;
    for (size_t q = 0; q < rule.size(); ++q) {
        const auto& lam = rule.bary[q];
        const double x = lam[0] * mesh.vertices[t[0]].x +
                         lam[1] * mesh.vertices[t[1]].x +
                         lam[2] * mesh.vertices[t[2]].x;
        const double y = lam[0] * mesh.vertices[t[0]].y +
                         lam[1] * mesh.vertices[t[1]].y +
                         lam[2] * mesh.vertices[t[2]].y;
        if (m == 0) {
            const double uh = v0 * lam[0] + v1 * lam[1] + v2 * lam[2];
            acc += rule.weights[q] * std::pow(std::abs(u.value(x, y) - uh), p);
        } else {
            acc += rule.weights[q] * (std::pow(std::abs(u.d(1, 0, x, y) - gx), p) +
                                      std::pow(std::abs(u.d(0, 1, x, y) - gy), p));
        }
    }
    return g.S * acc;
}

double nodal_error_norm(const Mesh& mesh, const FieldWithDerivatives& u,
                        std::span<const double> nodal, int m, double p) {
    if (m != 0 && m != 1)
        throw std::invalid_argument("P1 error norms support m in {0, 1}");
    const auto& rule = norms::quad_rule(
        std::clamp(6 + norms::quad_degree_bump(), 1, norms::kMaxQuadDegree));
    double total = 0.0;
    for (size_t e = 0; e < mesh.tris.size(); ++e)
        total += element_error_pow(mesh, e, u, nodal, m, p, rule);
    return std::pow(total, 1.0 / p);
}

} // namespace

double global_interp_error(const Mesh& mesh, const FieldWithDerivatives& u, int m,
                           double p) {
    std::vector<double> nodal(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i)
        nodal[i] = u.value(mesh.vertices[i].x, mesh.vertices[i].y);
    return nodal_error_norm(mesh, u, nodal, m, p);
}

MeshQuality mesh_quality(const Mesh& mesh) {
    MeshQuality q;
    for (size_t e = 0; e < mesh.tris.size(); ++e) {
        const geom::TriangleMetrics met = geom::metrics(element(mesh, e));
        q.max_R = std::max(q.max_R, met.R);
        q.max_theta = std::max(q.max_theta, met.theta_max);
        q.max_chunkiness = std::max(q.max_chunkiness, met.chunkiness);
        q.max_hK = std::max(q.max_hK, met.hK);
    }
    return q;
}

FemResult poisson_run(int n, double q, const FieldWithDerivatives& u_exact,
                      const FieldWithDerivatives& f) {
    const Mesh mesh = gen_aniso_mesh(n, q);
    const SparseSystem sys = assemble(mesh, f);
    FemResult res;
    res.n = n;
    res.a = 1.0 / n;
    res.b = mesh.vertices[static_cast<size_t>(n) + 1].y; // first grid row height
    res.u_h = solve_cg(sys, 1e-10, 20 * sys.n, &res.cg_iterations);
    res.h1_err = nodal_error_norm(mesh, u_exact, res.u_h, 1, 2.0);
    res.l2_err = nodal_error_norm(mesh, u_exact, res.u_h, 0, 2.0);
    res.interp_err = global_interp_error(mesh, u_exact, 1, 2.0);
    res.quality = mesh_quality(mesh);
    return res;
}

StudyResult convergence_study(double q, std::span<const int> ns,
                              const FieldWithDerivatives& u_exact,
                              const FieldWithDerivatives& f) {
    if (ns.size() < 2)
        throw std::invalid_argument("convergence study needs at least 2 sizes");
    StudyResult study;
    std::vector<double> as, h1, l2, ie;
    for (int n : ns) {
        study.runs.push_back(poisson_run(n, q, u_exact, f));
        const FemResult& r = study.runs.back();
        as.push_back(r.a);
        h1.push_back(r.h1_err);
        l2.push_back(r.l2_err);
        ie.push_back(r.interp_err);
    }
    study.h1_rate = experiments::fit_loglog(as, h1, 0);
    study.l2_rate = experiments::fit_loglog(as, l2, 0);
    study.interp_rate = experiments::fit_loglog(as, ie, 0);
    return study;
}

StudyResult convergence_study(double q, std::span<const int> ns) {
    const FieldWithDerivatives u = norms::field_sin_product();
    const FieldWithDerivatives f = norms::field_scaled_by(u, 2.0 * kPi * kPi);
    return convergence_study(q, ns, u, f);
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
    os << mesh.vertices.size() << " " << mesh.tris.size() << "\n";
    char buf[80];
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", mesh.vertices[i].x,
                      mesh.vertices[i].y, static_cast<int>(mesh.boundary[i]));
        os << buf;
    }
    for (const auto& t : mesh.tris)
        os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

} // namespace triterp::fem
