#include "triterp/interpolation.hpp"

#include <Eigen/Dense>
#include <mutex>
#include <stdexcept>

namespace triterp::interp {

namespace {

void check_order(int k) {
    if (k < 1 || k > kMaxOrder)
        throw std::invalid_argument("interpolation order must be in 1..5");
}

// Reference-triangle monomials (u^i v^j, graded-lex) evaluated at the
// equispaced lattice, LU-factored once per order.
struct ReferenceSystem {
    Eigen::MatrixXd V;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

const ReferenceSystem& reference_system(int k) {
    static ReferenceSystem systems[kMaxOrder + 1];
    static std::once_flag flags[kMaxOrder + 1];
    std::call_once(flags[k], [k] {
        const int n = node_count(k);
        Eigen::MatrixXd V(n, n);
        int row = 0;
        for (int a1 = k; a1 >= 0; --a1)
            for (int a2 = k - a1; a2 >= 0; --a2, ++row) {
                const int a3 = k - a1 - a2;
                const double u = static_cast<double>(a2) / k;
                const double v = static_cast<double>(a3) / k;
                int col = 0;
                for (int g = 0; g <= k; ++g)
                    for (int j = 0; j <= g; ++j, ++col)
                        V(row, col) = std::pow(u, g - j) * std::pow(v, j);
            }
        systems[k].V = V;
        systems[k].lu.compute(V);
    });
    return systems[k];
}

// One step of iterative refinement keeps the forward error near rounding
// level; the reference system's condition number reaches ~4e4 at order 5.
Eigen::VectorXd solve_refined(const ReferenceSystem& sys, const Eigen::VectorXd& rhs) {
    Eigen::VectorXd c = sys.lu.solve(rhs);
    c += sys.lu.solve(rhs - sys.V * c);
    return c;
}

Poly2 coeffs_to_global(const Eigen::VectorXd& c, int k, const Triangle& t) {
    Poly2 ref(k);
    int col = 0;
    for (int g = 0; g <= k; ++g)
        for (int j = 0; j <= g; ++j, ++col)
            ref.set_coeff(g - j, j, c(col));
    return ref.compose_affine(poly::reference_map(t).inverse());
}

} // namespace

NodeSet nodes(int k, const Triangle& t) {
    check_order(k);
    NodeSet set{k, {}};
    set.nodes.reserve(node_count(k));
    for (int a1 = k; a1 >= 0; --a1)
        for (int a2 = k - a1; a2 >= 0; --a2) {
            const int a3 = k - a1 - a2;
            Node n{a1, a2, a3, {}};
            n.p.x = (a1 * t.v(0).x + a2 * t.v(1).x + a3 * t.v(2).x) / k;
            n.p.y = (a1 * t.v(0).y + a2 * t.v(1).y + a3 * t.v(2).y) / k;
            set.nodes.push_back(n);
        }
    return set;
}

LagrangeBasis basis(int k, const Triangle& t) {
    check_order(k);
    const auto& sys = reference_system(k);
    const int n = node_count(k);
    LagrangeBasis lb{k, {}};
    lb.b.reserve(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        lb.b.push_back(coeffs_to_global(solve_refined(sys, e), k, t));
    }
    return lb;
}

Poly2 interpolate(std::span<const double> values, int k, const Triangle& t) {
    check_order(k);
    const int n = node_count(k);
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("value count does not match the node count");
    const auto& sys = reference_system(k);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i)
        rhs(i) = values[i];
    return coeffs_to_global(solve_refined(sys, rhs), k, t);
}

Poly2 error_poly(const Poly2& p, int k, const Triangle& t) {
    check_order(k);
    // Degree k+2 is admitted alongside the classical k+1 because the constant
    // estimator tests candidates one degree past the error space.
    if (p.degree() > k + 2 && p.effective_degree() > k + 2)
        throw std::invalid_argument("polynomial degree exceeds k+2");
    const NodeSet set = nodes(k, t);
    std::vector<double> values(set.nodes.size());
    for (size_t i = 0; i < set.nodes.size(); ++i)
        values[i] = p.eval(set.nodes[i].p);
    return p - interpolate(values, k, t);
}

} // namespace triterp::interp
