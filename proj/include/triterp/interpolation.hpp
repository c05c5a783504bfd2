#pragma once

#include "triterp/polynomial.hpp"

#include <span>
#include <vector>

namespace triterp::interp {

using geom::Point2;
using geom::Triangle;
using poly::Poly2;

/// Highest supported interpolation order.
constexpr int kMaxOrder = 5;

inline int node_count(int k) { return (k + 1) * (k + 2) / 2; }

/// Lattice node (a1/k, a2/k, a3/k) in barycentric coordinates, with its
/// position in the plane.
struct Node {
    int a1, a2, a3;
    Point2 p;
};

struct NodeSet {
    int k;
    std::vector<Node> nodes;
};

/// Equispaced barycentric lattice of order k on t; (k+1)(k+2)/2 nodes listed
/// with a1 descending, then a2 descending, so order 1 yields the vertices in
/// their original order.
NodeSet nodes(int k, const Triangle& t);

struct LagrangeBasis {
    int k;
    std::vector<Poly2> b; // b[i] is 1 at node i, 0 at the others
};

/// Nodal basis obtained from the monomial Vandermonde system, assembled and
/// solved in reference-triangle coordinates where its conditioning does not
/// depend on the shape of t, then mapped back.
LagrangeBasis basis(int k, const Triangle& t);

/// Polynomial of degree <= k matching the given values on nodes(k, t).
Poly2 interpolate(std::span<const double> values, int k, const Triangle& t);

/// p minus its order-k interpolant; degree of p must not exceed k+2.
Poly2 error_poly(const Poly2& p, int k, const Triangle& t);

} // namespace triterp::interp
