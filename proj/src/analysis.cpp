#include "maxwell2d/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxwell2d/assembly.hpp"
#include "maxwell2d/manufactured.hpp"

namespace maxwell2d {

namespace {

Vec2 bary_point(const Mesh& mesh, const Triangle& t, const std::array<double, 3>& b) {
    const Vec2 p0 = mesh.vertices[static_cast<std::size_t>(t.v[0])];
    const Vec2 p1 = mesh.vertices[static_cast<std::size_t>(t.v[1])];
    const Vec2 p2 = mesh.vertices[static_cast<std::size_t>(t.v[2])];
    return {b[0] * p0.x + b[1] * p1.x + b[2] * p2.x, b[0] * p0.y + b[1] * p1.y + b[2] * p2.y};
}

struct ElementField {
    Vec2 v0, v1, v2;   // nodal vectors
    double div = 0.0;  // constant per element
    double g11 = 0.0, g12 = 0.0, g21 = 0.0, g22 = 0.0;  // grad components d(E_c)/d(x_a)
};

ElementField element_field(const Mesh& mesh, const VectorField& f, int e) {
    const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
    const ElementGeometry& g = mesh.elem_geom[static_cast<std::size_t>(e)];
    ElementField ef;
    ef.v0 = {f.comp(t.v[0], 0), f.comp(t.v[0], 1)};
    ef.v1 = {f.comp(t.v[1], 0), f.comp(t.v[1], 1)};
    ef.v2 = {f.comp(t.v[2], 0), f.comp(t.v[2], 1)};
    const std::array<Vec2, 3> vv = {ef.v0, ef.v1, ef.v2};
    for (int i = 0; i < 3; ++i) {
        ef.g11 += vv[static_cast<std::size_t>(i)].x * g.grad[static_cast<std::size_t>(i)].x;
        ef.g12 += vv[static_cast<std::size_t>(i)].x * g.grad[static_cast<std::size_t>(i)].y;
        ef.g21 += vv[static_cast<std::size_t>(i)].y * g.grad[static_cast<std::size_t>(i)].x;
        ef.g22 += vv[static_cast<std::size_t>(i)].y * g.grad[static_cast<std::size_t>(i)].y;
    }
    ef.div = ef.g11 + ef.g22;
    return ef;
}

}  // namespace

ErrorPair relative_errors_against(const ReferenceField& ref, const VectorField& E_h,
                                  const Mesh& mesh, const TriQuadRule& rule) {
    double num1 = 0.0, den1 = 0.0, num2 = 0.0, den2 = 0.0;
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& tri = mesh.triangles[static_cast<std::size_t>(e)];
        const ElementGeometry& g = mesh.elem_geom[static_cast<std::size_t>(e)];
        const ElementField ef = element_field(mesh, E_h, e);
        for (const TriQuadPoint& q : rule.points) {
            const double w = g.area * q.weight;
            const Vec2 x = bary_point(mesh, tri, q.bary);
            const Vec2 ex = ref.value(x);
            const std::array<double, 4> dd = ref.grad(x);
            const Vec2 eh = {q.bary[0] * ef.v0.x + q.bary[1] * ef.v1.x + q.bary[2] * ef.v2.x,
                             q.bary[0] * ef.v0.y + q.bary[1] * ef.v1.y + q.bary[2] * ef.v2.y};
            const double dx1 = ex.x - eh.x;
            const double dx2 = ex.y - eh.y;
            num1 += w * (dx1 * dx1 + dx2 * dx2);
            den1 += w * (ex.x * ex.x + ex.y * ex.y);
            const double e11 = dd[0] - ef.g11;
            const double e12 = dd[1] - ef.g12;
            const double e21 = dd[2] - ef.g21;
            const double e22 = dd[3] - ef.g22;
            num2 += w * (e11 * e11 + e12 * e12 + e21 * e21 + e22 * e22);
            den2 += w * (dd[0] * dd[0] + dd[1] * dd[1] + dd[2] * dd[2] + dd[3] * dd[3]);
        }
    }
    if (den1 <= 0.0 || den2 <= 0.0)
        throw std::domain_error("relative_errors: reference field vanishes");
    ErrorPair ep;
    ep.theta1 = std::sqrt(num1 / den1);
    ep.theta2 = std::sqrt(num2 / den2);
    ep.level = mesh.level;
    return ep;
}

ErrorPair relative_errors(const CoefficientField& field, const VectorField& E_h, const Mesh& mesh,
                          double t, const TriQuadRule& rule) {
    ReferenceField ref;
    ref.value = [&field, t](Vec2 x) { return manufactured::exact_E(field, x, t); };
    ref.grad = [&field, t](Vec2 x) {
        const auto d = manufactured::exact_derivatives(field, x, t);
        return std::array<double, 4>{d.dE1dx, d.dE1dy, d.dE2dx, d.dE2dy};
    };
    ErrorPair ep = relative_errors_against(ref, E_h, mesh, rule);
    ep.m = field.m;
    return ep;
}

double nodal_relative_error(const CoefficientField& field, const VectorField& E_h,
                            const Mesh& mesh, double t) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const Vec2 ex = manufactured::exact_E(field, mesh.vertices[static_cast<std::size_t>(i)], t);
        const double d1 = ex.x - E_h.comp(i, 0);
        const double d2 = ex.y - E_h.comp(i, 1);
        num += d1 * d1 + d2 * d2;
        den += ex.x * ex.x + ex.y * ex.y;
    }
    if (den <= 0.0)
        throw std::domain_error("nodal_relative_error: exact solution vanishes at t = " +
                                std::to_string(t));
    return std::sqrt(num / den);
}

ConvergenceReport convergence_rates(const std::vector<ErrorPair>& errors) {
    if (errors.size() < 2)
        throw std::invalid_argument("convergence_rates: need at least two levels");
    ConvergenceReport rep;
    rep.m = errors.front().m;
    const double log2 = std::log(2.0);
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const ErrorPair& ep = errors[i];
        ConvergenceRow row;
        row.level = ep.level;
        row.nel = 2 * (1 << (2 * ep.level));
        row.nno = ((1 << ep.level) + 1) * ((1 << ep.level) + 1);
        row.theta1 = ep.theta1;
        row.theta2 = ep.theta2;
        if (i > 0) {
            const ErrorPair& prev = errors[i - 1];
            if (ep.theta1 > 0.0 && ep.theta2 > 0.0 && prev.theta1 > 0.0 && prev.theta2 > 0.0) {
                row.ratio1 = prev.theta1 / ep.theta1;
                row.r1 = std::abs(std::log(row.ratio1)) / log2;
                row.ratio2 = prev.theta2 / ep.theta2;
                row.r2 = std::abs(std::log(row.ratio2)) / log2;
                row.has_rates = true;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

EnergySample energy_sample(const StepState& state, const SchemeOperators& ops,
                           const NodalScalarField& eps_h) {
    const Mesh& mesh = *state.E_curr.mesh;
    const double inv_tau = 1.0 / state.tau;
    EnergySample s;
    s.t = static_cast<double>(state.k) * state.tau;

    for (int i = 0; i < state.E_curr.size(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i / 2)]) continue;
        const std::size_t u = static_cast<std::size_t>(i);
        const double d = (state.E_curr.dof[u] - state.E_prev.dof[u]) * inv_tau;
        s.dtE_eps += ops.Meps.diag[u] * d * d;
        s.E_sigma += ops.Msig.diag[u] * state.E_curr.dof[u] * state.E_curr.dof[u];
    }

    std::vector<double> work(state.E_curr.dof.size());
    ops.K.apply(state.E_curr.dof, work);
    s.gradE = dot(state.E_curr.dof, work);

    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const double eps_c = (eps_h.values[static_cast<std::size_t>(t.v[0])] +
                              eps_h.values[static_cast<std::size_t>(t.v[1])] +
                              eps_h.values[static_cast<std::size_t>(t.v[2])]) /
                             3.0;
        if (eps_c == 1.0) continue;
        const ElementField ef = element_field(mesh, state.E_curr, e);
        s.divE_epsm1 += mesh.elem_geom[static_cast<std::size_t>(e)].area * (eps_c - 1.0) * ef.div * ef.div;
    }
    s.total = s.dtE_eps + s.E_sigma + s.gradE + s.divE_epsm1;
    return s;
}

TripleNormOps TripleNormOps::build(const Mesh& mesh, const NodalScalarField& eps_h) {
    TripleNormOps ops;
    ops.mesh = &mesh;
    ops.eps_h = eps_h;
    ops.Meps = apply_dirichlet(lumped_mass(mesh, eps_h), mesh);
    ops.K = apply_dirichlet(stiffness(mesh), mesh);
    return ops;
}

double triple_norm_a_sq(const VectorField& v, const TripleNormOps& ops) {
    const Mesh& mesh = *ops.mesh;
    double l2_eps = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i / 2)]) continue;
        const std::size_t u = static_cast<std::size_t>(i);
        l2_eps += ops.Meps.diag[u] * v.dof[u] * v.dof[u];
    }
    std::vector<double> work(v.dof.size());
    ops.K.apply(v.dof, work);
    const double grad = dot(v.dof, work);
    double div_w = 0.0;
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const double eps_c = (ops.eps_h.values[static_cast<std::size_t>(t.v[0])] +
                              ops.eps_h.values[static_cast<std::size_t>(t.v[1])] +
                              ops.eps_h.values[static_cast<std::size_t>(t.v[2])]) /
                             3.0;
        if (eps_c == 1.0) continue;
        const ElementField ef = element_field(mesh, v, e);
        div_w += mesh.elem_geom[static_cast<std::size_t>(e)].area * (eps_c - 1.0) * ef.div * ef.div;
    }
    return l2_eps + grad + div_w;
}

double triple_norm_a_sq(const VectorField& v, const Mesh& mesh, const NodalScalarField& eps_h) {
    return triple_norm_a_sq(v, TripleNormOps::build(mesh, eps_h));
}

VectorField random_constrained_field(const Mesh& mesh, std::uint64_t seed) {
    VectorField f(mesh);
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
    };
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i)]) continue;
        f.comp(i, 0) = next();
        f.comp(i, 1) = next();
    }
    return f;
}

ProbeReport coercivity_probe(const Mesh& mesh, const CoefficientField& field, int n_samples,
                             std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("coercivity_probe: n_samples must be >= 1");
    const NodalScalarField eps_h = sample_nodal(field, mesh, CoefficientKind::Eps);
    const TripleNormOps tn = TripleNormOps::build(mesh, eps_h);
    const SparseOperator K = tn.K;
    const SparseOperator D = apply_dirichlet(divdiv_stab(mesh, eps_h), mesh);

    // Per-element closed-form coefficient data at centroids.
    const int ne = mesh.num_triangles();
    std::vector<double> eps_c(static_cast<std::size_t>(ne));
    std::vector<Vec2> grad_eps_c(static_cast<std::size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const Vec2 c = bary_point(mesh, t, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        const EpsDerivatives d = epsilon_derivatives_at(field, c);
        eps_c[static_cast<std::size_t>(e)] = d.eps;
        grad_eps_c[static_cast<std::size_t>(e)] = {d.dx, d.dy};
    }

    ProbeReport rep;
    rep.n_samples = n_samples;
    rep.min_slack_rel = 1e300;
    int half_norm_ok = 0;
    double continuity_max = 0.0;
    VectorField prev_sample;

    for (int s = 0; s < n_samples; ++s) {
        VectorField v = random_constrained_field(mesh, seed + static_cast<std::uint64_t>(s));
        const double tn2 = triple_norm_a_sq(v, tn);
        const double scale = 1.0 / std::sqrt(tn2);
        for (double& x : v.dof) x *= scale;

        // One consistent centroid realization: each term is the same
        // positive-weight sum over centroid values, so the pointwise Young
        // inequality transfers exactly.
        double a_c = 0.0, rhs_c = 0.0;
        for (int e = 0; e < ne; ++e) {
            const double area = mesh.elem_geom[static_cast<std::size_t>(e)].area;
            const ElementField ef = element_field(mesh, v, e);
            const Vec2 vc = {(ef.v0.x + ef.v1.x + ef.v2.x) / 3.0,
                             (ef.v0.y + ef.v1.y + ef.v2.y) / 3.0};
            const double grad_sq = ef.g11 * ef.g11 + ef.g12 * ef.g12 + ef.g21 * ef.g21 +
                                   ef.g22 * ef.g22;
            const double div_sq = ef.div * ef.div;
            const double w = eps_c[static_cast<std::size_t>(e)] - 1.0;
            const Vec2 ge = grad_eps_c[static_cast<std::size_t>(e)];
            const double cross = (ge.x * vc.x + ge.y * vc.y) * ef.div;
            const double gmag = std::sqrt(ge.x * ge.x + ge.y * ge.y);
            a_c += area * (grad_sq + w * div_sq + cross);
            rhs_c += area * (grad_sq + w * div_sq -
                             0.5 * gmag * ((vc.x * vc.x + vc.y * vc.y) + div_sq));
        }
        rep.min_slack_rel = std::min(rep.min_slack_rel, a_c - rhs_c);  // |||v|||_a = 1

        const double a_assembled = quad_form_a(v, v, K, D);
        if (a_assembled >= 0.5 - 1e-12) ++half_norm_ok;

        if (s > 0) {
            const double a_uv = std::abs(quad_form_a(prev_sample, v, K, D));
            continuity_max = std::max(continuity_max, a_uv);  // both normalized
        }
        prev_sample = std::move(v);
    }

    rep.intermediate_bound_holds = rep.min_slack_rel >= -1e-12;
    rep.half_norm_bound_fraction = static_cast<double>(half_norm_ok) / n_samples;
    rep.continuity_max = continuity_max;
    return rep;
}

}  // namespace maxwell2d
