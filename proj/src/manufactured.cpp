#include "maxwell2d/manufactured.hpp"

#include <cmath>

namespace maxwell2d {
namespace manufactured {

namespace {

constexpr double kPi = 3.14159265358979323846;

// S1 = pi sin^2(pi x) cos(pi y) sin(pi y) = pi A(x) B(y)
// S2 = -pi sin^2(pi y) cos(pi x) sin(pi x) = -pi A(y) B(x)
// with A(s) = sin^2(pi s), B(s) = sin(2 pi s)/2. Note A'(s) = 2 pi B(s),
// which makes div S = 0 identically.
struct AxisFactors {
    double A, dA, ddA;
    double B, dB, ddB;
};

AxisFactors axis_factors(double s) {
    const double sp = std::sin(kPi * s);
    const double s2 = std::sin(2.0 * kPi * s);
    const double c2 = std::cos(2.0 * kPi * s);
    AxisFactors f;
    f.A = sp * sp;
    f.dA = kPi * s2;
    f.ddA = 2.0 * kPi * kPi * c2;
    f.B = 0.5 * s2;
    f.dB = kPi * c2;
    f.ddB = -2.0 * kPi * kPi * s2;
    return f;
}

struct SpatialFactor {
    double s1, s2;
    double d1x, d1y, d2x, d2y;
    double d1xx, d1xy, d1yy, d2xx, d2xy, d2yy;
};

SpatialFactor spatial_factor(Vec2 p) {
    const AxisFactors fx = axis_factors(p.x);
    const AxisFactors fy = axis_factors(p.y);
    SpatialFactor s;
    s.s1 = kPi * fx.A * fy.B;
    s.d1x = kPi * fx.dA * fy.B;
    s.d1y = kPi * fx.A * fy.dB;
    s.d1xx = kPi * fx.ddA * fy.B;
    s.d1xy = kPi * fx.dA * fy.dB;
    s.d1yy = kPi * fx.A * fy.ddB;
    s.s2 = -kPi * fy.A * fx.B;
    s.d2x = -kPi * fy.A * fx.dB;
    s.d2y = -kPi * fy.dA * fx.B;
    s.d2xx = -kPi * fy.A * fx.ddB;
    s.d2xy = -kPi * fy.dA * fx.dB;
    s.d2yy = -kPi * fy.ddA * fx.B;
    return s;
}

// u = S/eps with first and second partials, assembled from S = u*eps by the
// product rule (stable, no eps^3 powers).
struct QuotientField {
    double u1, u2;
    double d1x, d1y, d2x, d2y;
    double d1xx, d1xy, d1yy, d2xx, d2xy, d2yy;
};

QuotientField quotient_field(const CoefficientField& field, Vec2 p) {
    const SpatialFactor s = spatial_factor(p);
    const EpsDerivatives e = epsilon_derivatives_at(field, p);
    QuotientField q;
    q.u1 = s.s1 / e.eps;
    q.u2 = s.s2 / e.eps;
    q.d1x = (s.d1x - q.u1 * e.dx) / e.eps;
    q.d1y = (s.d1y - q.u1 * e.dy) / e.eps;
    q.d2x = (s.d2x - q.u2 * e.dx) / e.eps;
    q.d2y = (s.d2y - q.u2 * e.dy) / e.eps;
    q.d1xx = (s.d1xx - 2.0 * q.d1x * e.dx - q.u1 * e.dxx) / e.eps;
    q.d1yy = (s.d1yy - 2.0 * q.d1y * e.dy - q.u1 * e.dyy) / e.eps;
    q.d1xy = (s.d1xy - q.d1x * e.dy - q.d1y * e.dx - q.u1 * e.dxy) / e.eps;
    q.d2xx = (s.d2xx - 2.0 * q.d2x * e.dx - q.u2 * e.dxx) / e.eps;
    q.d2yy = (s.d2yy - 2.0 * q.d2y * e.dy - q.u2 * e.dyy) / e.eps;
    q.d2xy = (s.d2xy - q.d2x * e.dy - q.d2y * e.dx - q.u2 * e.dxy) / e.eps;
    return q;
}

Derivatives derivatives_any_branch(const CoefficientField& field, Vec2 p, double t) {
    const QuotientField q = quotient_field(field, p);
    const double t2 = t * t;
    Derivatives d;
    d.dt = {2.0 * t * q.u1, 2.0 * t * q.u2};
    d.dtt = {2.0 * q.u1, 2.0 * q.u2};
    d.dE1dx = t2 * q.d1x;
    d.dE1dy = t2 * q.d1y;
    d.dE2dx = t2 * q.d2x;
    d.dE2dy = t2 * q.d2y;
    // curl = dx E2 - dy E1; curlcurl = (dy curl, -dx curl)
    d.curlcurl = {t2 * (q.d2xy - q.d1yy), -t2 * (q.d2xx - q.d1xy)};
    return d;
}

Vec2 source_any_branch(const CoefficientField& field, Vec2 p, double t) {
    const Derivatives d = derivatives_any_branch(field, p, t);
    const double eps = epsilon_at(field, p);
    const double sig = sigma_at(field, p);
    return {eps * d.dtt.x + d.curlcurl.x + sig * d.dt.x,
            eps * d.dtt.y + d.curlcurl.y + sig * d.dt.y};
}

void require_off_interface(const CoefficientField& field, Vec2 p) {
    if (!field.is_homogeneous() && field.inner_box.on_boundary(p))
        throw InterfacePointError("point lies on the coefficient discontinuity set");
}

}  // namespace

Vec2 exact_E(const CoefficientField& field, Vec2 p, double t) {
    const SpatialFactor s = spatial_factor(p);
    const double scale = t * t / epsilon_at(field, p);
    return {scale * s.s1, scale * s.s2};
}

Derivatives exact_derivatives(const CoefficientField& field, Vec2 p, double t) {
    require_off_interface(field, p);
    return derivatives_any_branch(field, p, t);
}

Vec2 source_f(const CoefficientField& field, Vec2 p, double t) {
    require_off_interface(field, p);
    return source_any_branch(field, p, t);
}

Derivatives exact_derivatives_total(const CoefficientField& field, Vec2 p, double t) {
    return derivatives_any_branch(field, p, t);
}

Vec2 source_total(const CoefficientField& field, Vec2 p, double t) {
    return source_any_branch(field, p, t);
}

VectorField interpolate(const std::function<Vec2(Vec2, double)>& fn, const Mesh& mesh, double t) {
    VectorField f(mesh);
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i)]) continue;
        const Vec2 v = fn(mesh.vertices[static_cast<std::size_t>(i)], t);
        f.comp(i, 0) = v.x;
        f.comp(i, 1) = v.y;
    }
    return f;
}

SourceFactors source_factors(const CoefficientField& field, const Mesh& mesh) {
    SourceFactors sf{VectorField(mesh), VectorField(mesh), VectorField(mesh)};
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i)]) continue;
        const Vec2 p = mesh.vertices[static_cast<std::size_t>(i)];
        const QuotientField q = quotient_field(field, p);
        const double eps = epsilon_at(field, p);
        const double sig = sigma_at(field, p);
        sf.P.comp(i, 0) = 2.0 * eps * q.u1;  // = 2 S1
        sf.P.comp(i, 1) = 2.0 * eps * q.u2;
        sf.Q.comp(i, 0) = q.d2xy - q.d1yy;
        sf.Q.comp(i, 1) = -(q.d2xx - q.d1xy);
        sf.R.comp(i, 0) = 2.0 * sig * q.u1;
        sf.R.comp(i, 1) = 2.0 * sig * q.u2;
    }
    return sf;
}

}  // namespace manufactured
}  // namespace maxwell2d
