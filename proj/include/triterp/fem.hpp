#pragma once

#include "triterp/norms.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace triterp::fem {

using geom::Point2;
using norms::FieldWithDerivatives;

/// Conforming triangulation of the unit square; `boundary[i]` marks Dirichlet
/// vertices.  Triangles are stored counterclockwise.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> tris;
    std::vector<std::uint8_t> boundary;
};

/// Criss-cross mesh with n columns of width a = 1/n and rows of height
/// b = 1/round(n^q); every cell is cut into four triangles through its center.
/// For q > 1 the cells flatten: the top/bottom triangles of each cell have
/// apex angle 2*atan(a/b) -> pi and circumradius ~ a^(2-q)/4, which grows
/// without bound once q > 2 even though all triangles stay non-degenerate.
Mesh gen_aniso_mesh(int n, double q);

/// Square CSR system; `rhs` carries the load and Dirichlet rows are reduced
/// to the identity with zeroed couplings (homogeneous boundary data).
struct SparseSystem {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> cols;
    std::vector<double> vals;
    std::vector<double> rhs;

    double at(int i, int j) const;
    std::vector<double> multiply(std::span<const double> x) const;
};

/// P1 stiffness (exact per-element gradients) and load (degree-4 base
/// quadrature) for  -laplace(u) = f, u = 0 on the boundary.
SparseSystem assemble(const Mesh& mesh, const FieldWithDerivatives& f);
/// Same without the boundary reduction (row sums of the matrix vanish).
SparseSystem assemble_unconstrained(const Mesh& mesh, const FieldWithDerivatives& f);

/// Jacobi-preconditioned conjugate gradients from the zero vector with a
/// fixed reduction order; throws (with the final residual in the message)
/// if `max_iter` does not reach a relative residual of `tol`.
std::vector<double> solve_cg(const SparseSystem& sys, double tol, int max_iter,
                             int* iterations = nullptr);

/// ( sum_K |u - I_K^1 u|^p_{m,p,K} )^(1/p) over the mesh, from vertex values
/// of u, with a degree-6 base rule per element.
double global_interp_error(const Mesh& mesh, const FieldWithDerivatives& u, int m,
                           double p);

struct MeshQuality {
    double max_R = 0.0;
    double max_theta = 0.0;
    double max_chunkiness = 0.0;
    double max_hK = 0.0;
};

MeshQuality mesh_quality(const Mesh& mesh);

struct FemResult {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> u_h;
    double h1_err = 0.0;     // |u - u_h|_{1,2}
    double l2_err = 0.0;     // ||u - u_h||_{0,2}
    double interp_err = 0.0; // |u - I_h u|_{1,2}
    MeshQuality quality;
    int cg_iterations = 0;
};

/// One assemble/solve/measure pass on gen_aniso_mesh(n, q) against the given
/// manufactured solution (f = -laplace u).
FemResult poisson_run(int n, double q, const FieldWithDerivatives& u_exact,
                      const FieldWithDerivatives& f);

struct StudyResult {
    std::vector<FemResult> runs;
    double h1_rate = 0.0;
    double l2_rate = 0.0;
    double interp_rate = 0.0;
};

/// Runs over the n-list and fits log-log rates against a = 1/n.  Default
/// manufactured solution: u = sin(pi x) sin(pi y).
StudyResult convergence_study(double q, std::span<const int> ns,
                              const FieldWithDerivatives& u_exact,
                              const FieldWithDerivatives& f);
StudyResult convergence_study(double q, std::span<const int> ns);

/// Plain text mesh exchange: "nv nt" header, vertex lines "x y flag",
/// then triangle lines "i j k".
void write_mesh(const Mesh& mesh, std::ostream& os);

} // namespace triterp::fem
