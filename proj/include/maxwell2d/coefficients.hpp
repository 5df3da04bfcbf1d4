#pragma once

#include <vector>

#include "maxwell2d/mesh.hpp"

namespace maxwell2d {

struct Box {
    double x0 = 0.25, x1 = 0.75;
    double y0 = 0.25, y1 = 0.75;

    // Open-box membership: points on the box boundary take the exterior branch.
    bool strictly_inside(Vec2 p) const {
        return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
    }
    bool on_boundary(Vec2 p) const {
        const bool on_x = (p.x == x0 || p.x == x1) && p.y >= y0 && p.y <= y1;
        const bool on_y = (p.y == y0 || p.y == y1) && p.x >= x0 && p.x <= x1;
        return on_x || on_y;
    }
};

// Relative permittivity / conductivity profile family: two sin^m bumps
// inside the inner box, constant (1 resp. 0) outside. m = 0 selects the
// homogeneous medium eps = 1, sigma = 0 everywhere.
struct CoefficientField {
    int m = 6;  // even exponent >= 2, or 0 for the homogeneous medium
    double sigma_scale = 0.001;
    Box inner_box{};
    double d1 = 2.1;    // upper bound on eps
    double d2 = 0.003;  // upper bound on sigma

    static CoefficientField homogeneous() { return CoefficientField{0, 0.0, {}, 2.1, 0.003}; }
    bool is_homogeneous() const { return m == 0; }
};

struct NodalScalarField {
    const Mesh* mesh = nullptr;
    std::vector<double> values;
};

enum class CoefficientKind { Eps, Sigma };

double epsilon_at(const CoefficientField& field, Vec2 p);
double sigma_at(const CoefficientField& field, Vec2 p);

// First and second partials of eps, zero outside the (open) inner box.
struct EpsDerivatives {
    double eps = 1.0;
    double dx = 0.0, dy = 0.0;
    double dxx = 0.0, dxy = 0.0, dyy = 0.0;
};
EpsDerivatives epsilon_derivatives_at(const CoefficientField& field, Vec2 p);

NodalScalarField sample_nodal(const CoefficientField& field, const Mesh& mesh, CoefficientKind which);

// Grid-search lower bound for ||eps - 1||_inf; step = 2^-grid_log2 over the inner box.
double sup_eps_minus_one(const CoefficientField& field, int grid_log2 = 10);

struct AdmissibilityReport {
    double max_grad_eps = 0.0;       // max |grad eps| over the sample grid (central differences)
    double violation_fraction = 0.0; // fraction of samples with |grad eps| > 0.5*min(1/2, eps-1)
    double max_eps = 0.0;
    double max_sigma = 0.0;
    bool eps_within_bounds = false;   // eps in [1, d1] on samples
    bool sigma_within_bounds = false; // sigma in [0, d2] on samples
    int grid_log2 = 0;
};

// Diagnostic only; never aborts the solver.
AdmissibilityReport check_admissibility(const CoefficientField& field, const Mesh& mesh,
                                        int grid_log2 = 12);

}  // namespace maxwell2d
