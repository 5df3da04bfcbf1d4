#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxwell2d/coefficients.hpp"
#include "maxwell2d/mesh.hpp"

using namespace maxwell2d;

namespace {

// Independent grid-search oracle for sup(eps - 1), scanning the inner box.
double sup_oracle(const CoefficientField& f, int grid_log2) {
    const int n = 1 << grid_log2;
    double best = 0.0;
    for (int i = n / 4; i <= 3 * n / 4; ++i) {
        for (int j = n / 4; j <= 3 * n / 4; ++j) {
            best = std::max(best, epsilon_at(f, {static_cast<double>(i) / n,
                                                 static_cast<double>(j) / n}) -
                                      1.0);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("epsilon profile values") {
    CoefficientField f;
    f.m = 6;
    SUBCASE("identically 1 outside the inner box") {
        CHECK(epsilon_at(f, {0.1, 0.9}) == 1.0);
        CHECK(epsilon_at(f, {0.0, 0.0}) == 1.0);
        CHECK(epsilon_at(f, {0.75, 0.2}) == 1.0);
    }
    SUBCASE("first bump peak plus the cross term") {
        // At (0.4375, 0.4375) the first bump is 1 and the second contributes 2^-6.
        CHECK(epsilon_at(f, {0.4375, 0.4375}) == doctest::Approx(2.015625).epsilon(1e-13));
    }
    SUBCASE("profile is discontinuous across the box boundary") {
        CHECK(epsilon_at(f, {0.25, 0.5}) == 1.0);  // exterior branch on the line
        const double inside = epsilon_at(f, {0.25 + 1e-9, 0.5});
        CHECK(inside > 1.0);
        const double jump_bound = 2.0 * std::pow(std::sin(0.125 * 3.14159265358979323846), 6);
        CHECK(inside <= 1.0 + jump_bound);
    }
}

TEST_CASE("sigma is the 0.001-scaled profile inside, zero outside") {
    CoefficientField f;
    f.m = 6;
    CHECK(sigma_at(f, {0.1, 0.9}) == 0.0);
    CHECK(sigma_at(f, {0.4375, 0.4375}) == doctest::Approx(0.002015625).epsilon(1e-13));
    // Shared profile: sigma = 0.001 * eps wherever the profile is active.
    for (double x : {0.3, 0.45, 0.6, 0.7}) {
        for (double y : {0.26, 0.5, 0.74}) {
            CHECK(sigma_at(f, {x, y}) == doctest::Approx(0.001 * epsilon_at(f, {x, y})));
        }
    }
}

TEST_CASE("profiles are symmetric under coordinate swap") {
    CoefficientField f;
    f.m = 8;
    for (double x : {0.3, 0.41, 0.57, 0.66}) {
        for (double y : {0.28, 0.49, 0.71}) {
            CHECK(epsilon_at(f, {x, y}) == doctest::Approx(epsilon_at(f, {y, x})).epsilon(1e-14));
            CHECK(sigma_at(f, {x, y}) == doctest::Approx(sigma_at(f, {y, x})).epsilon(1e-14));
        }
    }
}

TEST_CASE("nodal sampling") {
    const Mesh mesh = build_structured_mesh(3);
    CoefficientField f;
    f.m = 6;
    const NodalScalarField eps_h = sample_nodal(f, mesh, CoefficientKind::Eps);
    const NodalScalarField sig_h = sample_nodal(f, mesh, CoefficientKind::Sigma);
    REQUIRE(eps_h.values.size() == mesh.vertices.size());
    double eps_min = 1e300;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        eps_min = std::min(eps_min, eps_h.values[u]);
        if (mesh.is_boundary[u]) CHECK(eps_h.values[u] == 1.0);
        if (eps_h.values[u] > 1.0)
            CHECK(sig_h.values[u] == doctest::Approx(0.001 * eps_h.values[u]));
        else
            CHECK(sig_h.values[u] == 0.0);
    }
    CHECK(eps_min >= 1.0);
}

TEST_CASE("eps - 1 and sigma vanish on the domain boundary and outside the box") {
    CoefficientField f;
    f.m = 10;
    for (double s = 0.0; s <= 1.0; s += 0.04) {
        CHECK(epsilon_at(f, {s, 0.0}) == 1.0);
        CHECK(epsilon_at(f, {s, 1.0}) == 1.0);
        CHECK(epsilon_at(f, {0.0, s}) == 1.0);
        CHECK(epsilon_at(f, {1.0, s}) == 1.0);
        CHECK(sigma_at(f, {s, 0.0}) == 0.0);
        CHECK(sigma_at(f, {0.12, s * 0.2}) == 0.0);
    }
}

TEST_CASE("sup |eps - 1| grid search") {
    SUBCASE("homogeneous medium gives zero") {
        CHECK(sup_eps_minus_one(CoefficientField::homogeneous()) == 0.0);
    }
    SUBCASE("m = 6 maximum sits near the bump peaks") {
        CoefficientField f;
        f.m = 6;
        const double sup = sup_eps_minus_one(f, 12);
        const double oracle = sup_oracle(f, 12);
        CHECK(sup == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(sup == doctest::Approx(1.0156).epsilon(2e-3));
        CHECK(sup >= 1.015625 - 1e-12);  // value at the exact peak is a lower bound
    }
    SUBCASE("monotone in m at matched grid") {
        CoefficientField f6, f12;
        f6.m = 6;
        f12.m = 12;
        CHECK(sup_eps_minus_one(f12, 11) <= sup_eps_minus_one(f6, 11) + 1e-15);
    }
}

TEST_CASE("admissibility report") {
    const Mesh mesh = build_structured_mesh(3);
    SUBCASE("homogeneous profile satisfies the gradient condition with equality") {
        const AdmissibilityReport rep = check_admissibility(CoefficientField::homogeneous(), mesh, 8);
        CHECK(rep.max_grad_eps == 0.0);
        CHECK(rep.violation_fraction == 0.0);
        CHECK(rep.eps_within_bounds);
        CHECK(rep.sigma_within_bounds);
    }
    SUBCASE("m = 6 profile violates the gradient condition near the box boundary") {
        CoefficientField f;
        f.m = 6;
        const AdmissibilityReport rep = check_admissibility(f, mesh, 10);
        CHECK(rep.violation_fraction > 0.0);
        CHECK(rep.max_grad_eps > 0.0);
        // Eq-2.3-style bounds still hold for d1 = 2.1, d2 = 0.003.
        CHECK(rep.max_eps <= 2.1);
        CHECK(rep.eps_within_bounds);
        CHECK(rep.sigma_within_bounds);
    }
}
