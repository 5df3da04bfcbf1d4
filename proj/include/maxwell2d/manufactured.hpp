#pragma once

#include <functional>
#include <stdexcept>

#include "maxwell2d/coefficients.hpp"
#include "maxwell2d/linalg.hpp"
#include "maxwell2d/mesh.hpp"

namespace maxwell2d {

// Point lies on the discontinuity set of the coefficient profile (the inner
// box boundary), where spatial derivatives are undefined.
struct InterfacePointError : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact solution E = (t^2/eps) * S(x,y) with the divergence-free spatial
// factor S; quadratic time prefactor gives E(.,0) = dE/dt(.,0) = 0 and the
// sin^2 factors vanish on the unit-square boundary.
namespace manufactured {

Vec2 exact_E(const CoefficientField& field, Vec2 p, double t);

struct Derivatives {
    Vec2 dt;        // dE/dt
    Vec2 dtt;       // d2E/dt2
    double dE1dx = 0, dE1dy = 0, dE2dx = 0, dE2dy = 0;
    Vec2 curlcurl;  // (dy curl, -dx curl) in 2D
};

// Closed-form derivatives; throws InterfacePointError on the inner-box boundary.
Derivatives exact_derivatives(const CoefficientField& field, Vec2 p, double t);

// f = eps d2E/dt2 + curl curl E + sigma dE/dt; same domain restriction.
Vec2 source_f(const CoefficientField& field, Vec2 p, double t);

// Branch-resolved total variants for nodal interpolation: points on the
// inner-box boundary take the exterior (eps = 1) limit instead of refusing.
Derivatives exact_derivatives_total(const CoefficientField& field, Vec2 p, double t);
Vec2 source_total(const CoefficientField& field, Vec2 p, double t);

// Nodal interpolation at time t; vertices on the inner-box boundary take the
// exterior (eps = 1) branch, boundary-of-domain dofs are zeroed.
VectorField interpolate(const std::function<Vec2(Vec2, double)>& fn, const Mesh& mesh, double t);

// Spatial source factors for the separable form j(x,t) = -(P + t^2 Q + t R):
// P = 2S, Q = curlcurl(S/eps), R = 2(sigma/eps)S. Used by the fast stepping path.
struct SourceFactors {
    VectorField P, Q, R;
};
SourceFactors source_factors(const CoefficientField& field, const Mesh& mesh);

}  // namespace manufactured
}  // namespace maxwell2d
