#pragma once

#include <array>
#include <iosfwd>

#include "maxwell2d/coefficients.hpp"
#include "maxwell2d/linalg.hpp"
#include "maxwell2d/mesh.hpp"
#include "maxwell2d/quadrature.hpp"

namespace maxwell2d {

// grad(phi_i) . grad(phi_j) * area for one element.
std::array<std::array<double, 3>, 3> local_stiffness(const ElementGeometry& g);

// Lumped weighted mass: per node w_i * sum of |K|/3 over incident elements,
// replicated for both components. With require_positive, a nonpositive entry
// on a free dof is an assembly error; disable it for weights that may vanish
// (e.g. sigma).
DiagonalOperator lumped_mass(const Mesh& mesh, const NodalScalarField& weight,
                             bool require_positive = true);

// Vector stiffness (grad u, grad v): block-diagonal over the two components.
SparseOperator stiffness(const Mesh& mesh);

// Stabilization operator (div((eps_h - 1) u), div v). The integrand is linear
// per element, so the centroid rule is exact; the rule parameter exists for
// the exactness cross-check against the edge-midpoint rule.
SparseOperator divdiv_stab(const Mesh& mesh, const NodalScalarField& eps_h,
                           const TriQuadRule& rule = tri_rule_centroid());

// Homogeneous Dirichlet masking: boundary rows/cols zeroed with unit diagonal
// (operators), boundary entries zeroed (fields). Idempotent.
SparseOperator apply_dirichlet(SparseOperator op, const Mesh& mesh);
DiagonalOperator apply_dirichlet(DiagonalOperator op, const Mesh& mesh);
VectorField apply_dirichlet(VectorField f, const Mesh& mesh);

// v^T (K + D) u; dimension mismatch is an error.
double quad_form_a(const VectorField& u, const VectorField& v, const SparseOperator& K,
                   const SparseOperator& D);
double quad_form_a(const VectorField& u, const VectorField& v, const Mesh& mesh,
                   const NodalScalarField& eps_h);

// Coordinate-list text dump (row col value), for debugging.
void write_operator_coo(const SparseOperator& op, std::ostream& out);

}  // namespace maxwell2d
