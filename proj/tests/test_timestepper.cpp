#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxwell2d/analysis.hpp"
#include "maxwell2d/manufactured.hpp"
#include "maxwell2d/timestepper.hpp"

using namespace maxwell2d;

namespace {

VectorField smooth_field(const Mesh& mesh, double t_sample) {
    const CoefficientField hom = CoefficientField::homogeneous();
    return manufactured::interpolate(
        [&](Vec2 p, double) { return manufactured::exact_E(hom, p, t_sample); }, mesh, 0.0);
}

double max_abs(const VectorField& f) {
    double m = 0.0;
    for (double v : f.dof) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("cfl_max_tau formula") {
    SUBCASE("homogeneous medium with C = 1 gives tau_max = h") {
        const Mesh mesh = build_structured_mesh(4);
        CHECK(cfl_max_tau(mesh, CoefficientField::homogeneous(), 1.0) ==
              doctest::Approx(mesh.h).epsilon(1e-14));
    }
    SUBCASE("m = 6 profile at level 3") {
        const Mesh mesh = build_structured_mesh(3);
        CoefficientField f6;
        f6.m = 6;
        const double bound = cfl_max_tau(mesh, f6, 1.0);
        // h / sqrt(1 + 3 * sup(eps-1)) with the grid-search supremum
        const double expected = mesh.h / std::sqrt(1.0 + 3.0 * sup_eps_minus_one(f6));
        CHECK(bound == doctest::Approx(expected).epsilon(1e-14));
        CHECK(bound == doctest::Approx(0.0621).epsilon(2e-3));
    }
    SUBCASE("the reference run setting is far below the bound") {
        const Mesh mesh = build_structured_mesh(6);
        CoefficientField f6;
        f6.m = 6;
        // tau = 0.0005 at h = 0.015625 satisfies the bound for any C up to ~15.
        CHECK(0.0005 < cfl_max_tau(mesh, f6, 15.0));
        CHECK(0.0005 > cfl_max_tau(mesh, f6, 16.0));
    }
}

TEST_CASE("init_state") {
    const Mesh mesh = build_structured_mesh(3);
    const VectorField zero(mesh);
    SUBCASE("zero data gives the zero two-level state") {
        const StepState s = init_state(zero, zero, 0.01);
        CHECK(s.k == 1);
        CHECK(max_abs(s.E_prev) == 0.0);
        CHECK(max_abs(s.E_curr) == 0.0);
    }
    SUBCASE("zero velocity keeps E^1 = E^0") {
        const VectorField f0 = smooth_field(mesh, 0.5);
        const StepState s = init_state(f0, zero, 0.01);
        for (std::size_t i = 0; i < f0.dof.size(); ++i) CHECK(s.E_curr.dof[i] == f0.dof[i]);
    }
    SUBCASE("zero displacement gives E^1 = tau * f1") {
        const VectorField g = smooth_field(mesh, 0.5);
        const StepState s = init_state(zero, g, 0.02);
        for (std::size_t i = 0; i < g.dof.size(); ++i)
            CHECK(s.E_curr.dof[i] == doctest::Approx(0.02 * g.dof[i]).epsilon(1e-15));
    }
    SUBCASE("mismatched meshes are rejected") {
        const Mesh other = build_structured_mesh(2);
        CHECK_THROWS_AS(init_state(zero, VectorField(other), 0.01), std::invalid_argument);
    }
}

TEST_CASE("single step") {
    const Mesh mesh = build_structured_mesh(2);
    const CoefficientField hom = CoefficientField::homogeneous();
    const double tau = 0.01;
    const SchemeOperators ops = SchemeOperators::build(mesh, hom, tau);
    const VectorField zero(mesh);

    SUBCASE("zero state and source stay zero") {
        StepState s = init_state(zero, zero, tau);
        step(s, ops, zero);
        CHECK(s.k == 2);
        CHECK(max_abs(s.E_curr) == 0.0);
    }
    SUBCASE("homogeneous medium reduces to the plain leapfrog update") {
        const VectorField f0 = smooth_field(mesh, 0.5);
        StepState s = init_state(f0, zero, tau);
        step(s, ops, zero);
        std::vector<double> Kf(f0.dof.size());
        ops.K.apply(f0.dof, Kf);
        for (int i = 0; i < mesh.num_vertices(); ++i) {
            for (int c = 0; c < 2; ++c) {
                const std::size_t u = static_cast<std::size_t>(2 * i + c);
                const double want = mesh.is_boundary[static_cast<std::size_t>(i)]
                                        ? 0.0
                                        : f0.dof[u] - tau * tau * Kf[u] / ops.M1.diag[u];
                CHECK(s.E_curr.dof[u] == doctest::Approx(want).epsilon(1e-13));
            }
        }
    }
    SUBCASE("one step matches a dense-matrix evaluation (m = 6 coefficients)") {
        CoefficientField f6;
        f6.m = 6;
        const SchemeOperators sops = SchemeOperators::build(mesh, f6, tau);
        const VectorField f0 = smooth_field(mesh, 0.5);
        const VectorField j = manufactured::interpolate(
            [&](Vec2 p, double t) { return manufactured::source_total(f6, p, t); }, mesh, tau);
        StepState s = init_state(f0, zero, tau);
        step(s, sops, j);
        // dense replay of the same update
        std::vector<double> flux(f0.dof.size(), 0.0);
        for (int r = 0; r < sops.K.dim; ++r) {
            for (int k = sops.K.row_offsets[static_cast<std::size_t>(r)];
                 k < sops.K.row_offsets[static_cast<std::size_t>(r) + 1]; ++k)
                flux[static_cast<std::size_t>(r)] +=
                    sops.K.vals[static_cast<std::size_t>(k)] *
                    f0.dof[static_cast<std::size_t>(sops.K.cols[static_cast<std::size_t>(k)])];
            for (int k = sops.D.row_offsets[static_cast<std::size_t>(r)];
                 k < sops.D.row_offsets[static_cast<std::size_t>(r) + 1]; ++k)
                flux[static_cast<std::size_t>(r)] +=
                    sops.D.vals[static_cast<std::size_t>(k)] *
                    f0.dof[static_cast<std::size_t>(sops.D.cols[static_cast<std::size_t>(k)])];
        }
        for (int i = 0; i < mesh.num_vertices(); ++i) {
            for (int c = 0; c < 2; ++c) {
                const std::size_t u = static_cast<std::size_t>(2 * i + c);
                double want = 0.0;
                if (!mesh.is_boundary[static_cast<std::size_t>(i)]) {
                    const double rhs = sops.Meps.diag[u] * (2.0 * f0.dof[u] - f0.dof[u]) +
                                       tau * 0.5 * sops.Msig.diag[u] * f0.dof[u] -
                                       tau * tau * (flux[u] + sops.M1.diag[u] * j.dof[u]);
                    want = rhs / sops.Mlhs.diag[u];
                }
                CHECK(s.E_curr.dof[u] == doctest::Approx(want).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("run") {
    CoefficientField f6;
    f6.m = 6;
    SUBCASE("step count and observer invocations") {
        const Mesh mesh = build_structured_mesh(3);
        ManufacturedSource src(f6, mesh);
        const VectorField zero(mesh);
        int calls = 0;
        const StepState fin = run(mesh, f6, src, zero, zero, 0.25, 0.0005,
                                  {[&](const StepState&) { ++calls; }});
        CHECK(fin.k == 500);  // E^N at t = T with N = 500 time levels
        CHECK(calls == 500);  // initial state + 499 steps
    }
    SUBCASE("T = tau returns the initial state unchanged by stepping") {
        const Mesh mesh = build_structured_mesh(3);
        const VectorField f0 = smooth_field(mesh, 0.5);
        const VectorField g = smooth_field(mesh, 0.3);
        ZeroSource src(mesh);
        const StepState fin = run(mesh, f6, src, f0, g, 0.01, 0.01);
        CHECK(fin.k == 1);
        for (std::size_t i = 0; i < f0.dof.size(); ++i)
            CHECK(fin.E_curr.dof[i] == doctest::Approx(f0.dof[i] + 0.01 * g.dof[i]).epsilon(1e-15));
    }
    SUBCASE("tau must divide T") {
        const Mesh mesh = build_structured_mesh(3);
        ZeroSource src(mesh);
        const VectorField zero(mesh);
        CHECK_THROWS_AS(run(mesh, f6, src, zero, zero, 0.25, 0.0003), std::invalid_argument);
    }
    SUBCASE("CFL refusal without override, acceptance with override") {
        const Mesh mesh = build_structured_mesh(3);
        ZeroSource src(mesh);
        const VectorField zero(mesh);
        const double bound = cfl_max_tau(mesh, f6, 2.0);
        const double tau = 2.0 * bound;
        CHECK_THROWS_AS(run(mesh, f6, src, zero, zero, 10 * tau, tau), CflViolationError);
        RunOptions opts;
        opts.cfl_override = true;
        CHECK_NOTHROW(run(mesh, f6, src, zero, zero, 10 * tau, tau, {}, opts));
    }
    SUBCASE("far above the stability threshold the run blows up with a step index") {
        const Mesh mesh = build_structured_mesh(3);
        ZeroSource src(mesh);
        const VectorField f0 = smooth_field(mesh, 0.5);
        const VectorField zero(mesh);
        RunOptions opts;
        opts.cfl_override = true;
        const double tau = 4.0 * mesh.h;  // far beyond any stable step
        try {
            run(mesh, f6, src, f0, zero, 400 * tau, tau, {}, opts);
            FAIL("expected blow-up");
        } catch (const BlowUpError& e) {
            CHECK(e.step_index >= 1);
        }
    }
    SUBCASE("tau-refinement differences halve per halving (first-order cold start)") {
        // The two-level start E^1 = E^0 + tau f1 omits the tau^2/2 acceleration
        // term, so the tau-error of the full run is first order; successive
        // halvings shrink the change by a factor of 2.
        const Mesh mesh = build_structured_mesh(4);
        ManufacturedSource src(f6, mesh);
        const VectorField zero(mesh);
        const VectorField e1 = run(mesh, f6, src, zero, zero, 0.25, 0.005).E_curr;
        const VectorField e2 = run(mesh, f6, src, zero, zero, 0.25, 0.0025).E_curr;
        const VectorField e3 = run(mesh, f6, src, zero, zero, 0.25, 0.00125).E_curr;
        double d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < e1.dof.size(); ++i) {
            d1 += (e1.dof[i] - e2.dof[i]) * (e1.dof[i] - e2.dof[i]);
            d2 += (e2.dof[i] - e3.dof[i]) * (e2.dof[i] - e3.dof[i]);
        }
        const double ratio = std::sqrt(d1) / std::sqrt(d2);
        CHECK(ratio > 1.7);
        CHECK(ratio < 2.4);
    }
    SUBCASE("two identical runs produce bitwise-identical fields") {
        const Mesh mesh = build_structured_mesh(3);
        ManufacturedSource src1(f6, mesh);
        ManufacturedSource src2(f6, mesh);
        const VectorField zero(mesh);
        const VectorField a = run(mesh, f6, src1, zero, zero, 0.05, 0.0005).E_curr;
        const VectorField b = run(mesh, f6, src2, zero, zero, 0.05, 0.0005).E_curr;
        for (std::size_t i = 0; i < a.dof.size(); ++i) CHECK(a.dof[i] == b.dof[i]);
    }
    SUBCASE("boundary dofs stay identically zero at every step") {
        const Mesh mesh = build_structured_mesh(3);
        ManufacturedSource src(f6, mesh);
        const VectorField zero(mesh);
        bool all_zero = true;
        run(mesh, f6, src, zero, zero, 0.05, 0.0005,
            {[&](const StepState& s) {
                for (int v : s.E_curr.mesh->boundary_nodes)
                    all_zero = all_zero && s.E_curr.comp(v, 0) == 0.0 && s.E_curr.comp(v, 1) == 0.0;
            }});
        CHECK(all_zero);
    }
}

TEST_CASE("leapfrog quadratic invariant is conserved at half the CFL bound") {
    const Mesh mesh = build_structured_mesh(4);
    const CoefficientField hom = CoefficientField::homogeneous();
    const double tau = 0.5 * cfl_max_tau(mesh, hom, 2.0);
    const SchemeOperators ops = SchemeOperators::build(mesh, hom, tau);
    const VectorField f0 = smooth_field(mesh, 0.5);
    StepState s = init_state(f0, VectorField(mesh), tau);
    const VectorField zero(mesh);
    std::vector<double> work(f0.dof.size());
    double first = 0.0, max_drift = 0.0;
    for (int k = 1; k <= 500; ++k) {
        step(s, ops, zero);
        double kinetic = 0.0;
        for (std::size_t i = 0; i < s.E_curr.dof.size(); ++i) {
            const double d = (s.E_curr.dof[i] - s.E_prev.dof[i]) / tau;
            kinetic += ops.M1.diag[i] * d * d;
        }
        ops.K.apply(s.E_curr.dof, work);
        const double invariant = kinetic + dot(s.E_prev.dof, work);
        if (k == 1)
            first = invariant;
        else
            max_drift = std::max(max_drift, std::abs(invariant - first) / std::abs(first));
    }
    CHECK(max_drift <= 1e-8);
}

TEST_CASE("damped system energy does not grow without a source") {
    CoefficientField f6;
    f6.m = 6;
    const Mesh mesh = build_structured_mesh(3);
    const double tau = 0.25 * cfl_max_tau(mesh, f6, 2.0);
    const SchemeOperators ops = SchemeOperators::build(mesh, f6, tau);
    const NodalScalarField eps_h = sample_nodal(f6, mesh, CoefficientKind::Eps);
    const VectorField f0 = smooth_field(mesh, 0.5);
    StepState s = init_state(f0, VectorField(mesh), tau);
    const VectorField zero(mesh);
    double early_max = 0.0, overall_max = 0.0;
    for (int k = 1; k <= 300; ++k) {
        step(s, ops, zero);
        const double total = energy_sample(s, ops, eps_h).total;
        if (k <= 10) early_max = std::max(early_max, total);
        overall_max = std::max(overall_max, total);
    }
    CHECK(overall_max <= 1.05 * early_max);
}

TEST_CASE("empirical stability threshold") {
    CoefficientField f6;
    f6.m = 6;
    SUBCASE("homogeneous threshold sits in the classical leapfrog range") {
        const Mesh mesh = build_structured_mesh(3);
        const double th = estimate_stability_threshold(mesh, CoefficientField::homogeneous(), 1);
        CHECK(th / mesh.h >= 0.3);
        CHECK(th / mesh.h <= 1.0);
    }
    SUBCASE("threshold scales linearly in h") {
        const double t3 = estimate_stability_threshold(build_structured_mesh(3), f6, 1);
        const double t4 = estimate_stability_threshold(build_structured_mesh(4), f6, 1);
        const double ratio = t4 / t3;
        CHECK(ratio >= 0.4);
        CHECK(ratio <= 0.6);
    }
    SUBCASE("profile does not raise the threshold above the homogeneous one") {
        // The critical mode lives outside the inclusion where the operators
        // coincide, so the measured thresholds agree to bisection tolerance.
        const Mesh mesh = build_structured_mesh(3);
        const double th_hom = estimate_stability_threshold(mesh, CoefficientField::homogeneous(), 1);
        const double th_m6 = estimate_stability_threshold(mesh, f6, 1);
        CHECK(th_m6 <= th_hom * 1.02);
    }
}
