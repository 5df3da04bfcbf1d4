#include "maxwell2d/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxwell2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One bump factor sin^m(pi*(2s - c)) and its first two derivatives in s.
struct BumpFactor {
    double p, dp, ddp;
};

BumpFactor bump_factor(double s, double center, int m) {
    const double theta = kPi * (2.0 * s - center);
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    BumpFactor f;
    f.p = std::pow(sn, m);
    const double snm1 = std::pow(sn, m - 1);
    const double snm2 = m >= 2 ? std::pow(sn, m - 2) : 0.0;
    f.dp = 2.0 * kPi * m * snm1 * cs;
    f.ddp = 4.0 * kPi * kPi * m * snm2 * ((m - 1) * cs * cs - sn * sn);
    return f;
}

// eps - 1 inside the box (the two-bump profile), value only.
double profile_value(double x, double y, int m) {
    const double b1 = std::pow(std::sin(kPi * (2.0 * x - 0.375)), m) *
                      std::pow(std::sin(kPi * (2.0 * y - 0.375)), m);
    const double b2 = std::pow(std::sin(kPi * (2.0 * x - 0.625)), m) *
                      std::pow(std::sin(kPi * (2.0 * y - 0.625)), m);
    return b1 + b2;
}

}  // namespace

double epsilon_at(const CoefficientField& field, Vec2 p) {
    if (field.is_homogeneous() || !field.inner_box.strictly_inside(p)) return 1.0;
    return 1.0 + profile_value(p.x, p.y, field.m);
}

double sigma_at(const CoefficientField& field, Vec2 p) {
    if (field.is_homogeneous() || !field.inner_box.strictly_inside(p)) return 0.0;
    return field.sigma_scale * (1.0 + profile_value(p.x, p.y, field.m));
}

EpsDerivatives epsilon_derivatives_at(const CoefficientField& field, Vec2 p) {
    EpsDerivatives d;
    if (field.is_homogeneous() || !field.inner_box.strictly_inside(p)) return d;
    const BumpFactor ax1 = bump_factor(p.x, 0.375, field.m);
    const BumpFactor ay1 = bump_factor(p.y, 0.375, field.m);
    const BumpFactor ax2 = bump_factor(p.x, 0.625, field.m);
    const BumpFactor ay2 = bump_factor(p.y, 0.625, field.m);
    d.eps = 1.0 + ax1.p * ay1.p + ax2.p * ay2.p;
    d.dx = ax1.dp * ay1.p + ax2.dp * ay2.p;
    d.dy = ax1.p * ay1.dp + ax2.p * ay2.dp;
    d.dxx = ax1.ddp * ay1.p + ax2.ddp * ay2.p;
    d.dyy = ax1.p * ay1.ddp + ax2.p * ay2.ddp;
    d.dxy = ax1.dp * ay1.dp + ax2.dp * ay2.dp;
    return d;
}

NodalScalarField sample_nodal(const CoefficientField& field, const Mesh& mesh,
                              CoefficientKind which) {
    NodalScalarField f;
    f.mesh = &mesh;
    f.values.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        f.values[i] = which == CoefficientKind::Eps ? epsilon_at(field, mesh.vertices[i])
                                                    : sigma_at(field, mesh.vertices[i]);
    }
    return f;
}

double sup_eps_minus_one(const CoefficientField& field, int grid_log2) {
    if (field.is_homogeneous()) return 0.0;
    const int n = 1 << grid_log2;
    const double step = 1.0 / n;
    // The profile vanishes outside the inner box; scan the box only.
    const Box& b = field.inner_box;
    const int ix0 = static_cast<int>(std::floor(b.x0 / step));
    const int ix1 = static_cast<int>(std::ceil(b.x1 / step));
    const int iy0 = static_cast<int>(std::floor(b.y0 / step));
    const int iy1 = static_cast<int>(std::ceil(b.y1 / step));
    double best = 0.0;
    for (int ix = ix0; ix <= ix1; ++ix) {
        for (int iy = iy0; iy <= iy1; ++iy) {
            best = std::max(best, epsilon_at(field, {ix * step, iy * step}) - 1.0);
        }
    }
    return best;
}

AdmissibilityReport check_admissibility(const CoefficientField& field, const Mesh& mesh,
                                        int grid_log2) {
    (void)mesh;
    AdmissibilityReport rep;
    rep.grid_log2 = grid_log2;
    const int n = 1 << grid_log2;
    const double step = 1.0 / n;

    long total = 0;
    long violations = 0;
    double max_grad = 0.0, max_eps = 1.0, max_sigma = 0.0;
    // Sample the closed inner box plus a one-cell margin; everything further
    // out is exactly constant.
    const Box& b = field.inner_box;
    const int ix0 = std::max(1, static_cast<int>(std::floor(b.x0 / step)) - 1);
    const int ix1 = std::min(n - 1, static_cast<int>(std::ceil(b.x1 / step)) + 1);
    const int iy0 = std::max(1, static_cast<int>(std::floor(b.y0 / step)) - 1);
    const int iy1 = std::min(n - 1, static_cast<int>(std::ceil(b.y1 / step)) + 1);
    for (int ix = ix0; ix <= ix1; ++ix) {
        for (int iy = iy0; iy <= iy1; ++iy) {
            const double x = ix * step;
            const double y = iy * step;
            const double e = epsilon_at(field, {x, y});
            const double s = sigma_at(field, {x, y});
            const double gx =
                (epsilon_at(field, {x + step, y}) - epsilon_at(field, {x - step, y})) / (2.0 * step);
            const double gy =
                (epsilon_at(field, {x, y + step}) - epsilon_at(field, {x, y - step})) / (2.0 * step);
            const double grad = std::sqrt(gx * gx + gy * gy);
            max_grad = std::max(max_grad, grad);
            max_eps = std::max(max_eps, e);
            max_sigma = std::max(max_sigma, s);
            ++total;
            if (grad > 0.5 * std::min(0.5, e - 1.0) + 1e-14) ++violations;
        }
    }
    rep.max_grad_eps = max_grad;
    rep.violation_fraction = total > 0 ? static_cast<double>(violations) / total : 0.0;
    rep.max_eps = max_eps;
    rep.max_sigma = max_sigma;
    rep.eps_within_bounds = max_eps <= field.d1 + 1e-12;
    rep.sigma_within_bounds = max_sigma <= field.d2 + 1e-12;
    return rep;
}

}  // namespace maxwell2d
