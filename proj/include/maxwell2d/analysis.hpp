#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maxwell2d/coefficients.hpp"
#include "maxwell2d/linalg.hpp"
#include "maxwell2d/quadrature.hpp"
#include "maxwell2d/timestepper.hpp"

namespace maxwell2d {

struct ErrorPair {
    double theta1 = 0.0;  // relative L2 error
    double theta2 = 0.0;  // relative gradient-seminorm error
    int level = 0;
    int m = 0;
};

// Relative errors of E_h against the exact solution at time t, integrated
// elementwise with the given rule (degree 4 by default). Throws
// std::domain_error when the exact solution vanishes (t = 0).
ErrorPair relative_errors(const CoefficientField& field, const VectorField& E_h, const Mesh& mesh,
                          double t, const TriQuadRule& rule = tri_rule_degree4());

// Pointwise reference field for the generic error path: value and the four
// gradient components (dE1/dx, dE1/dy, dE2/dx, dE2/dy).
struct ReferenceField {
    std::function<Vec2(Vec2)> value;
    std::function<std::array<double, 4>(Vec2)> grad;
};

ErrorPair relative_errors_against(const ReferenceField& ref, const VectorField& E_h,
                                  const Mesh& mesh, const TriQuadRule& rule = tri_rule_degree4());

// Discrete counterpart: plain nodal l2 ratio over all vertices. Diagnostic
// companion to the integral measure.
double nodal_relative_error(const CoefficientField& field, const VectorField& E_h,
                            const Mesh& mesh, double t);

struct ConvergenceRow {
    int level = 0;
    int nel = 0;
    int nno = 0;
    double theta1 = 0.0, ratio1 = 0.0, r1 = 0.0;
    double theta2 = 0.0, ratio2 = 0.0, r2 = 0.0;
    bool has_rates = false;  // first row has no predecessor
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    int m = 0;
    double tau = 0.0;
    double T = 0.0;
    std::string timestamp;
    std::string config_hash;
};

// r = |log(theta_l / theta_{l+1})| / log 2 per adjacent pair; a zero error
// value flags the pair as rate-undefined instead of failing.
ConvergenceReport convergence_rates(const std::vector<ErrorPair>& errors);

struct EnergySample {
    double t = 0.0;
    double dtE_eps = 0.0;     // ||dE/dt||^2_eps, backward difference
    double E_sigma = 0.0;     // ||E||^2_sigma
    double gradE = 0.0;       // ||grad E||^2
    double divE_epsm1 = 0.0;  // ||div E||^2_{eps-1}
    double total = 0.0;
};

EnergySample energy_sample(const StepState& state, const SchemeOperators& ops,
                           const NodalScalarField& eps_h);

// Quadrature realization shared by the triple norm and the energy monitor:
// lumped weighted masses for L2 terms, assembled stiffness for the gradient,
// centroid rule for the (eps-1)-weighted divergence.
struct TripleNormOps {
    const Mesh* mesh = nullptr;
    NodalScalarField eps_h;
    DiagonalOperator Meps;
    SparseOperator K;

    static TripleNormOps build(const Mesh& mesh, const NodalScalarField& eps_h);
};

double triple_norm_a_sq(const VectorField& v, const TripleNormOps& ops);
double triple_norm_a_sq(const VectorField& v, const Mesh& mesh, const NodalScalarField& eps_h);

struct ProbeReport {
    int n_samples = 0;
    // Intermediate bound a(v,v) >= |grad v|^2 + |div v|^2_{eps-1}
    //                            - 1/2 |v|^2_{|grad eps|} - 1/2 |div v|^2_{|grad eps|},
    // all terms evaluated with one consistent centroid quadrature.
    double min_slack_rel = 0.0;
    bool intermediate_bound_holds = false;
    // Fraction of samples satisfying the stronger bound a(v,v) >= 1/2 |||v|||^2_a
    // (reported only; not provable from the elementwise Young step alone).
    double half_norm_bound_fraction = 0.0;
    // Sampled continuity quotient max |a(u,v)| / (|||u|||_a |||v|||_a).
    double continuity_max = 0.0;
};

ProbeReport coercivity_probe(const Mesh& mesh, const CoefficientField& field, int n_samples,
                             std::uint64_t seed);

// Uniform(-1,1) per free dof, deterministic across platforms.
VectorField random_constrained_field(const Mesh& mesh, std::uint64_t seed);

}  // namespace maxwell2d
