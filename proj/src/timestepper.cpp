#include "maxwell2d/timestepper.hpp"

#include <cmath>
#include <stdexcept>

#include "maxwell2d/manufactured.hpp"

namespace maxwell2d {

SchemeOperators SchemeOperators::build(const Mesh& mesh, const CoefficientField& field,
                                       double tau) {
    const NodalScalarField eps_h = sample_nodal(field, mesh, CoefficientKind::Eps);
    const NodalScalarField sig_h = sample_nodal(field, mesh, CoefficientKind::Sigma);
    NodalScalarField lhs_h;
    lhs_h.mesh = &mesh;
    lhs_h.values.resize(eps_h.values.size());
    for (std::size_t i = 0; i < eps_h.values.size(); ++i)
        lhs_h.values[i] = eps_h.values[i] + 0.5 * tau * sig_h.values[i];
    NodalScalarField ones;
    ones.mesh = &mesh;
    ones.values.assign(eps_h.values.size(), 1.0);

    SchemeOperators ops;
    ops.Meps = apply_dirichlet(lumped_mass(mesh, eps_h), mesh);
    ops.Msig = apply_dirichlet(lumped_mass(mesh, sig_h, /*require_positive=*/false), mesh);
    ops.Mlhs = apply_dirichlet(lumped_mass(mesh, lhs_h), mesh);
    ops.M1 = apply_dirichlet(lumped_mass(mesh, ones), mesh);
    ops.K = apply_dirichlet(stiffness(mesh), mesh);
    ops.D = apply_dirichlet(divdiv_stab(mesh, eps_h), mesh);
    return ops;
}

double cfl_max_tau(const Mesh& mesh, const CoefficientField& field, double C) {
    if (C <= 0.0) throw std::invalid_argument("cfl_max_tau: C must be positive");
    const double eta = C * std::sqrt(1.0 + 3.0 * sup_eps_minus_one(field));
    return mesh.h / eta;
}

StepState init_state(const VectorField& f0h, const VectorField& f1h, double tau) {
    if (f0h.mesh != f1h.mesh || f0h.size() != f1h.size())
        throw std::invalid_argument("init_state: initial fields on different meshes");
    StepState s;
    s.k = 1;
    s.tau = tau;
    s.E_prev = f0h;
    s.E_curr = f0h;
    for (std::size_t i = 0; i < s.E_curr.dof.size(); ++i) s.E_curr.dof[i] += tau * f1h.dof[i];
    return s;
}

void step(StepState& state, const SchemeOperators& ops, const VectorField& j_k) {
    const int n = state.E_curr.size();
    if (j_k.size() != n || ops.K.dim != n)
        throw std::invalid_argument("step: dimension mismatch");
    const Mesh& mesh = *state.E_curr.mesh;
    const double tau = state.tau;
    const double tau2 = tau * tau;

    std::vector<double> flux(static_cast<std::size_t>(n));
    ops.K.apply(state.E_curr.dof, flux);
    ops.D.apply_add(state.E_curr.dof, flux);

    VectorField next(mesh);
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i / 2)]) continue;
        const std::size_t u = static_cast<std::size_t>(i);
        const double rhs = ops.Meps.diag[u] * (2.0 * state.E_curr.dof[u] - state.E_prev.dof[u]) +
                           tau * 0.5 * ops.Msig.diag[u] * state.E_prev.dof[u] -
                           tau2 * (flux[u] + ops.M1.diag[u] * j_k.dof[u]);
        const double v = rhs / ops.Mlhs.diag[u];
        next.dof[u] = v;
        finite = finite && std::isfinite(v);
    }
    if (!finite) throw BlowUpError(state.k);

    state.E_prev = std::move(state.E_curr);
    state.E_curr = std::move(next);
    state.k += 1;
}

ManufacturedSource::ManufacturedSource(const CoefficientField& field, const Mesh& mesh) {
    auto factors = manufactured::source_factors(field, mesh);
    P_ = std::move(factors.P);
    Q_ = std::move(factors.Q);
    R_ = std::move(factors.R);
    work_ = VectorField(mesh);
}

const VectorField& ManufacturedSource::at_step(int, double t) {
    const double t2 = t * t;
    for (std::size_t i = 0; i < work_.dof.size(); ++i)
        work_.dof[i] = -(P_.dof[i] + t2 * Q_.dof[i] + t * R_.dof[i]);
    return work_;
}

StepState run(const Mesh& mesh, const CoefficientField& field, NodalSource& source,
              const VectorField& f0h, const VectorField& f1h, double T, double tau,
              const std::vector<StepObserver>& observers, const RunOptions& opts) {
    if (tau <= 0.0 || T <= 0.0) throw std::invalid_argument("run: tau and T must be positive");
    const long long N = std::llround(T / tau);
    if (N < 1 || std::abs(static_cast<double>(N) * tau - T) > 1e-12)
        throw std::invalid_argument("run: tau must divide T");
    const double bound = cfl_max_tau(mesh, field, opts.cfl_C);
    if (tau > bound && !opts.cfl_override) throw CflViolationError(tau, bound);

    const SchemeOperators ops = SchemeOperators::build(mesh, field, tau);
    StepState state = init_state(f0h, f1h, tau);
    for (const StepObserver& obs : observers) obs(state);
    for (long long k = 1; k < N; ++k) {
        const double t_k = static_cast<double>(k) * tau;
        step(state, ops, source.at_step(static_cast<int>(k), t_k));
        for (const StepObserver& obs : observers) obs(state);
    }
    return state;
}

namespace {

// Portable deterministic uniform in [-1, 1).
double uniform_pm1(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
}

// Low-mode trig field plus small seeded noise; rough enough to excite the
// unstable modes within 200 steps near the threshold.
VectorField randomized_smooth_field(const Mesh& mesh, std::uint64_t seed) {
    VectorField f(mesh);
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
    constexpr double kPi = 3.14159265358979323846;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i)]) continue;
        const Vec2 p = mesh.vertices[static_cast<std::size_t>(i)];
        f.comp(i, 0) = std::sin(2.0 * kPi * p.x) * std::sin(kPi * p.y) + 1e-3 * uniform_pm1(s);
        f.comp(i, 1) = std::sin(kPi * p.x) * std::sin(3.0 * kPi * p.y) + 1e-3 * uniform_pm1(s);
    }
    return f;
}

bool run_is_stable(const Mesh& mesh, const SchemeOperators& ops, const VectorField& f0,
                   double tau) {
    StepState s = init_state(f0, VectorField(*f0.mesh), tau);
    double init_max = 0.0;
    for (double v : f0.dof) init_max = std::max(init_max, std::abs(v));
    const VectorField zero(mesh);
    for (int k = 1; k <= 200; ++k) {
        try {
            step(s, ops, zero);
        } catch (const BlowUpError&) {
            return false;
        }
        double cur_max = 0.0;
        for (double v : s.E_curr.dof) cur_max = std::max(cur_max, std::abs(v));
        if (cur_max >= 1e3 * init_max) return false;
    }
    return true;
}

}  // namespace

double estimate_stability_threshold(const Mesh& mesh, const CoefficientField& field,
                                    std::uint64_t seed) {
    const VectorField f0 = randomized_smooth_field(mesh, seed);
    double lo = 1e-5;
    double hi = mesh.h;

    auto stable_at = [&](double tau) {
        const SchemeOperators ops = SchemeOperators::build(mesh, field, tau);
        return run_is_stable(mesh, ops, f0, tau);
    };

    if (!stable_at(lo)) return lo;
    if (stable_at(hi)) return hi;
    while ((hi - lo) / (0.5 * (hi + lo)) > 1e-2) {
        const double mid = 0.5 * (lo + hi);
        if (stable_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace maxwell2d
