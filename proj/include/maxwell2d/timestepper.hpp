#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxwell2d/assembly.hpp"
#include "maxwell2d/coefficients.hpp"
#include "maxwell2d/linalg.hpp"

namespace maxwell2d {

struct BlowUpError : std::runtime_error {
    int step_index;
    explicit BlowUpError(int k)
        : std::runtime_error("non-finite field value at step " + std::to_string(k) +
                             " (CFL violation signal)"),
          step_index(k) {}
};

struct CflViolationError : std::runtime_error {
    double tau, bound;
    CflViolationError(double t, double b)
        : std::runtime_error("tau = " + std::to_string(t) + " exceeds CFL bound " +
                             std::to_string(b) + " (set time.cfl_override to force)"),
          tau(t),
          bound(b) {}
};

// Time levels k-1 and k of the damped leapfrog scheme.
struct StepState {
    int k = 1;
    double tau = 0.0;
    VectorField E_prev;  // E^{k-1}
    VectorField E_curr;  // E^k
};

// Masked operators of the explicit scheme. Mlhs = eps + tau/2 sigma lumped.
struct SchemeOperators {
    DiagonalOperator Meps, Msig, Mlhs, M1;
    SparseOperator K, D;

    static SchemeOperators build(const Mesh& mesh, const CoefficientField& field, double tau);
};

// tau bound h / (C sqrt(1 + 3 ||eps-1||_inf)).
double cfl_max_tau(const Mesh& mesh, const CoefficientField& field, double C);

StepState init_state(const VectorField& f0h, const VectorField& f1h, double tau);

// One leapfrog update; j_k is the nodal source interpolant at t_k = k*tau.
void step(StepState& state, const SchemeOperators& ops, const VectorField& j_k);

// Time-indexed nodal source provider.
class NodalSource {
public:
    virtual ~NodalSource() = default;
    virtual const VectorField& at_step(int k, double t) = 0;
};

class ZeroSource final : public NodalSource {
public:
    explicit ZeroSource(const Mesh& mesh) : zero_(mesh) {}
    const VectorField& at_step(int, double) override { return zero_; }

private:
    VectorField zero_;
};

// j = -(P + t^2 Q + t R) with precomputed spatial factors of the
// manufactured source; see manufactured::source_factors.
class ManufacturedSource final : public NodalSource {
public:
    ManufacturedSource(const CoefficientField& field, const Mesh& mesh);
    const VectorField& at_step(int k, double t) override;

private:
    VectorField P_, Q_, R_, work_;
};

using StepObserver = std::function<void(const StepState&)>;

struct RunOptions {
    double cfl_C = 2.0;
    bool cfl_override = false;
};

// N = round(T/tau) time levels; performs N-1 steps from (E^0, E^1) and
// returns E^N at t = T. Observers see the initial state and every step.
StepState run(const Mesh& mesh, const CoefficientField& field, NodalSource& source,
              const VectorField& f0h, const VectorField& f1h, double T, double tau,
              const std::vector<StepObserver>& observers = {}, const RunOptions& opts = {});

// Empirical stability threshold: bisection on tau in [1e-5, h], 200 steps of
// randomized smooth data, stable iff max |dof| < 1e3 x initial.
double estimate_stability_threshold(const Mesh& mesh, const CoefficientField& field,
                                    std::uint64_t seed = 1);

}  // namespace maxwell2d
