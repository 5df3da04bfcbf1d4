#include "maxwell2d/commands.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "maxwell2d/analysis.hpp"
#include "maxwell2d/assembly.hpp"
#include "maxwell2d/manufactured.hpp"
#include "maxwell2d/reporting.hpp"
#include "maxwell2d/timestepper.hpp"

namespace maxwell2d {

namespace {

CoefficientField coefficient_field_from(const SolverSettings& s) {
    CoefficientField f;
    f.m = s.m;
    f.sigma_scale = s.sigma_scale;
    f.inner_box = {s.box[0], s.box[1], s.box[2], s.box[3]};
    return f;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out.is_open()) throw std::runtime_error("could not open output file: " + path);
    return out;
}

}  // namespace

int cmd_convergence(const RunConfig& cfg, std::ostream& log) {
    const SolverSettings s = SolverSettings::from(cfg);
    const CoefficientField field = coefficient_field_from(s);

    std::vector<ErrorPair> errors;
    for (int level : s.levels) {
        const Mesh mesh = build_structured_mesh(level);
        ManufacturedSource source(field, mesh);
        const VectorField zero(mesh);
        log << "[convergence] m=" << s.m << " level=" << level << " nodes=" << mesh.num_vertices()
            << " tau=" << s.tau << " T=" << s.T << "\n";
        const StepState final_state =
            run(mesh, field, source, zero, zero, s.T, s.tau, {}, {s.cfl_C, s.cfl_override});
        errors.push_back(relative_errors(field, final_state.E_curr, mesh, s.T));
        log << "[convergence]   theta1=" << errors.back().theta1
            << " theta2=" << errors.back().theta2 << "\n";
    }

    ConvergenceReport rep;
    if (errors.size() >= 2) {
        rep = convergence_rates(errors);
    } else {
        // Single level: error columns only.
        ConvergenceRow row;
        row.level = errors[0].level;
        row.nel = 2 * (1 << (2 * errors[0].level));
        row.nno = ((1 << errors[0].level) + 1) * ((1 << errors[0].level) + 1);
        row.theta1 = errors[0].theta1;
        row.theta2 = errors[0].theta2;
        rep.rows.push_back(row);
        rep.m = errors[0].m;
    }
    rep.tau = s.tau;
    rep.T = s.T;
    rep.timestamp = iso8601_utc_now();
    rep.config_hash = cfg.hash();

    const std::string stem = "table_m" + std::to_string(s.m);
    {
        auto out = open_output(s.output_dir, stem + ".csv");
        write_convergence_csv(rep, out);
    }
    {
        auto out = open_output(s.output_dir, stem + ".md");
        write_convergence_markdown(rep, out);
    }
    {
        auto out = open_output(s.output_dir, stem + ".json");
        write_convergence_json(rep, out);
    }
    log << "[convergence] wrote " << s.output_dir << "/" << stem << ".{csv,md,json}\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    const SolverSettings s = SolverSettings::from(cfg);
    if (s.levels.size() != 1)
        throw ConfigError("solve expects a single level (use mesh.level)");
    const CoefficientField field = coefficient_field_from(s);
    const Mesh mesh = build_structured_mesh(s.levels[0]);

    if (s.dump_mesh) {
        auto out = open_output(s.output_dir, "mesh.csv");
        write_mesh_csv(mesh, out);
    }

    const SchemeOperators ops = SchemeOperators::build(mesh, field, s.tau);
    if (s.dump_operators) {
        auto out_k = open_output(s.output_dir, "stiffness.coo");
        write_operator_coo(ops.K, out_k);
        auto out_d = open_output(s.output_dir, "divdiv.coo");
        write_operator_coo(ops.D, out_d);
    }

    const NodalScalarField eps_h = sample_nodal(field, mesh, CoefficientKind::Eps);
    std::vector<EnergySample> energy;
    const long long N = std::llround(s.T / s.tau);

    std::vector<StepObserver> observers;
    observers.push_back([&](const StepState& st) { energy.push_back(energy_sample(st, ops, eps_h)); });
    observers.push_back([&](const StepState& st) {
        if (st.k % s.output_every == 0 || st.k == 1 || st.k == N) {
            auto out = open_output(s.output_dir, "snapshot_" + std::to_string(st.k) + ".csv");
            write_snapshot_csv(mesh, st.E_curr, out);
        }
    });

    const VectorField zero(mesh);
    StepState final_state = [&] {
        if (s.problem == "zero") {
            ZeroSource source(mesh);
            return run(mesh, field, source, zero, zero, s.T, s.tau, observers,
                       {s.cfl_C, s.cfl_override});
        }
        ManufacturedSource source(field, mesh);
        return run(mesh, field, source, zero, zero, s.T, s.tau, observers,
                   {s.cfl_C, s.cfl_override});
    }();

    {
        auto out = open_output(s.output_dir, "energy.csv");
        write_energy_csv(energy, out);
    }
    log << "[solve] level=" << s.levels[0] << " steps=" << (N - 1)
        << " final_t=" << static_cast<double>(final_state.k) * s.tau << " energy_rows="
        << energy.size() << "\n";
    return kExitOk;
}

int cmd_cfl(const RunConfig& cfg, std::ostream& log) {
    const SolverSettings s = SolverSettings::from(cfg);
    const CoefficientField field = coefficient_field_from(s);

    std::vector<CflRow> rows;
    for (int level : s.levels) {
        const Mesh mesh = build_structured_mesh(level);
        CflRow row;
        row.level = level;
        row.h = mesh.h;
        row.formula_bound = cfl_max_tau(mesh, field, s.cfl_C);
        row.empirical_threshold = estimate_stability_threshold(mesh, field, s.seed);
        rows.push_back(row);
        log << "[cfl] level=" << level << " h=" << row.h << " formula_bound=" << row.formula_bound
            << " empirical_threshold=" << row.empirical_threshold << "\n";
    }
    auto out = open_output(s.output_dir, "cfl.csv");
    write_cfl_csv(rows, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: the runtime property suite.

namespace {

struct PropertyResult {
    std::string name;
    bool pass;
    std::string detail;
};

double tri_monomial_integral(int p, int q) {
    // Integral of x^p y^q over the unit right triangle: p! q! / (p+q+2)!.
    double num = 1.0;
    for (int i = 2; i <= p; ++i) num *= i;
    for (int i = 2; i <= q; ++i) num *= i;
    double den = 1.0;
    for (int i = 2; i <= p + q + 2; ++i) den *= i;
    return num / den;
}

bool check_rule_exactness(const TriQuadRule& rule) {
    const ElementGeometry g = triangle_geometry({0, 0}, {1, 0}, {0, 1});
    for (int p = 0; p + 0 <= rule.degree; ++p) {
        for (int q = 0; p + q <= rule.degree; ++q) {
            double acc = 0.0;
            for (const TriQuadPoint& pt : rule.points) {
                const double x = pt.bary[1];  // vertex order (0,0),(1,0),(0,1)
                const double y = pt.bary[2];
                acc += g.area * pt.weight * std::pow(x, p) * std::pow(y, q);
            }
            if (std::abs(acc - tri_monomial_integral(p, q)) > 1e-14) return false;
        }
    }
    return true;
}

// Direct elementwise evaluation of (div((eps_h-1)u), div v), independent of
// the assembled matrix path.
double divdiv_form_direct(const Mesh& mesh, const NodalScalarField& eps_h, const VectorField& u,
                          const VectorField& v, const TriQuadRule& rule) {
    double acc = 0.0;
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const ElementGeometry& g = mesh.elem_geom[static_cast<std::size_t>(e)];
        const std::array<double, 3> w = {eps_h.values[static_cast<std::size_t>(t.v[0])] - 1.0,
                                         eps_h.values[static_cast<std::size_t>(t.v[1])] - 1.0,
                                         eps_h.values[static_cast<std::size_t>(t.v[2])] - 1.0};
        const Vec2 grad_w = w[0] * g.grad[0] + w[1] * g.grad[1] + w[2] * g.grad[2];
        double div_u = 0.0, div_v = 0.0;
        Vec2 u_at[3];
        for (int i = 0; i < 3; ++i) {
            u_at[i] = {u.comp(t.v[i], 0), u.comp(t.v[i], 1)};
            div_u += u.comp(t.v[i], 0) * g.grad[i].x + u.comp(t.v[i], 1) * g.grad[i].y;
            div_v += v.comp(t.v[i], 0) * g.grad[i].x + v.comp(t.v[i], 1) * g.grad[i].y;
        }
        for (const TriQuadPoint& q : rule.points) {
            const double eps_m1 =
                w[0] * q.bary[0] + w[1] * q.bary[1] + w[2] * q.bary[2];
            const Vec2 u_q = {
                q.bary[0] * u_at[0].x + q.bary[1] * u_at[1].x + q.bary[2] * u_at[2].x,
                q.bary[0] * u_at[0].y + q.bary[1] * u_at[1].y + q.bary[2] * u_at[2].y};
            const double div_weps_u = grad_w.x * u_q.x + grad_w.y * u_q.y + eps_m1 * div_u;
            acc += g.area * q.weight * div_weps_u * div_v;
        }
    }
    return acc;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
    const SolverSettings s = SolverSettings::from(cfg);
    const bool mutate_d = s.mutation == "d_sign_flip";

    std::vector<PropertyResult> results;
    auto record = [&](const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    };

    // Mesh invariants at level 3.
    {
        const Mesh mesh = build_structured_mesh(3);
        bool ok = mesh.num_triangles() == 128 && mesh.num_vertices() == 81 &&
                  static_cast<int>(mesh.boundary_nodes.size()) == 32;
        double area_sum = 0.0;
        for (const ElementGeometry& g : mesh.elem_geom) {
            area_sum += g.area;
            ok = ok && g.area > 0.0;
            const Vec2 gs = g.grad[0] + g.grad[1] + g.grad[2];
            ok = ok && std::abs(gs.x) < 1e-13 && std::abs(gs.y) < 1e-13;
        }
        ok = ok && std::abs(area_sum - 1.0) < 1e-14;
        // Conformity: interior edges shared by exactly two triangles.
        std::map<std::pair<int, int>, int> edge_count;
        for (const Triangle& t : mesh.triangles) {
            for (int k = 0; k < 3; ++k) {
                int a = t.v[k], b = t.v[(k + 1) % 3];
                if (a > b) std::swap(a, b);
                edge_count[{a, b}] += 1;
            }
        }
        for (const auto& [edge, count] : edge_count) {
            const bool bdry = mesh.is_boundary[static_cast<std::size_t>(edge.first)] &&
                              mesh.is_boundary[static_cast<std::size_t>(edge.second)];
            ok = ok && (count == 2 || (count == 1 && bdry));
        }
        record("mesh_invariants", ok);
    }

    // Quadrature rules integrate their stated degree exactly; the assembled
    // stiffness block matches the analytic unit-triangle values.
    {
        bool ok = check_rule_exactness(tri_rule_centroid()) &&
                  check_rule_exactness(tri_rule_midpoint3()) &&
                  check_rule_exactness(tri_rule_degree4()) &&
                  check_rule_exactness(tri_rule_degree7());
        const auto k = local_stiffness(triangle_geometry({0, 0}, {1, 0}, {0, 1}));
        const double expected[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) ok = ok && std::abs(k[i][j] - expected[i][j]) <= 1e-14;
        record("quadrature_exactness", ok);
    }

    // Centroid and edge-midpoint rules agree entrywise on the stabilization.
    {
        const Mesh mesh = build_structured_mesh(3);
        CoefficientField field = coefficient_field_from(s);
        if (field.is_homogeneous()) field.m = 6;
        const NodalScalarField eps_h = sample_nodal(field, mesh, CoefficientKind::Eps);
        const SparseOperator d_centroid = divdiv_stab(mesh, eps_h, tri_rule_centroid());
        const SparseOperator d_midpoint = divdiv_stab(mesh, eps_h, tri_rule_midpoint3());
        bool ok = d_centroid.nnz() == d_midpoint.nnz();
        if (ok) {
            for (std::size_t i = 0; i < d_centroid.vals.size(); ++i)
                ok = ok && std::abs(d_centroid.vals[i] - d_midpoint.vals[i]) <= 1e-14;
        }
        record("stabilization_quadrature_exactness", ok);
    }

    // Assembled stabilization matches a direct evaluation of the bilinear form.
    {
        const Mesh mesh = build_structured_mesh(3);
        CoefficientField field = coefficient_field_from(s);
        if (field.is_homogeneous()) field.m = 6;
        const NodalScalarField eps_h = sample_nodal(field, mesh, CoefficientKind::Eps);
        SparseOperator D = apply_dirichlet(divdiv_stab(mesh, eps_h), mesh);
        if (mutate_d) {
            for (double& v : D.vals) v = -v;
        }
        bool ok = true;
        double max_rel = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const VectorField u = random_constrained_field(mesh, 100 + static_cast<std::uint64_t>(trial));
            const VectorField v = random_constrained_field(mesh, 200 + static_cast<std::uint64_t>(trial));
            std::vector<double> work(u.dof.size());
            D.apply(u.dof, work);
            const double assembled = dot(v.dof, work);
            const double direct = divdiv_form_direct(mesh, eps_h, u, v, tri_rule_degree4());
            const double rel = std::abs(assembled - direct) / std::max(1.0, std::abs(direct));
            max_rel = std::max(max_rel, rel);
            ok = ok && rel <= 1e-12;
        }
        record("stabilization_form_consistency", ok, "max_rel=" + std::to_string(max_rel));
    }

    // Divergence identity of the exact solution.
    {
        CoefficientField field = coefficient_field_from(s);
        if (field.is_homogeneous()) field.m = 6;
        const double t = 0.25;
        std::uint64_t rng = 42;
        auto next01 = [&rng]() {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            return static_cast<double>(rng >> 11) * 0x1.0p-53;
        };
        double max_div = 0.0, scale = 0.0;
        int accepted = 0;
        while (accepted < 10000) {
            const Vec2 p = {0.01 + 0.98 * next01(), 0.01 + 0.98 * next01()};
            if (field.inner_box.on_boundary(p)) continue;
            ++accepted;
            const Vec2 E = manufactured::exact_E(field, p, t);
            const auto d = manufactured::exact_derivatives(field, p, t);
            const EpsDerivatives ed = epsilon_derivatives_at(field, p);
            const double div_eps_E =
                ed.eps * (d.dE1dx + d.dE2dy) + ed.dx * E.x + ed.dy * E.y;
            max_div = std::max(max_div, std::abs(div_eps_E));
            scale = std::max({scale, std::abs(E.x), std::abs(E.y)});
        }
        record("divergence_identity", max_div <= 1e-10 * scale,
               "max_div=" + std::to_string(max_div));
    }

    // Closed-form derivatives match central finite differences.
    {
        bool ok = true;
        for (int m : {6, 12}) {
            CoefficientField field = coefficient_field_from(s);
            field.m = m;
            const double t = 0.25, delta = 1e-5;
            std::uint64_t rng = 7 + static_cast<std::uint64_t>(m);
            auto next01 = [&rng]() {
                rng ^= rng << 13;
                rng ^= rng >> 7;
                rng ^= rng << 17;
                return static_cast<double>(rng >> 11) * 0x1.0p-53;
            };
            int accepted = 0;
            while (accepted < 100) {
                const Vec2 p = {0.01 + 0.98 * next01(), 0.01 + 0.98 * next01()};
                const double dist = std::min({std::abs(p.x - 0.25), std::abs(p.x - 0.75),
                                              std::abs(p.y - 0.25), std::abs(p.y - 0.75)});
                if (dist < 1e-3) continue;
                ++accepted;
                const auto d = manufactured::exact_derivatives(field, p, t);
                auto E = [&](Vec2 q) { return manufactured::exact_E(field, q, t); };
                const double fd11 = (E({p.x + delta, p.y}).x - E({p.x - delta, p.y}).x) / (2 * delta);
                const double fd12 = (E({p.x, p.y + delta}).x - E({p.x, p.y - delta}).x) / (2 * delta);
                const double fd21 = (E({p.x + delta, p.y}).y - E({p.x - delta, p.y}).y) / (2 * delta);
                const double fd22 = (E({p.x, p.y + delta}).y - E({p.x, p.y - delta}).y) / (2 * delta);
                auto close = [](double a, double b) {
                    return std::abs(a - b) <= 1e-6 * (std::abs(a) + 1.0);
                };
                ok = ok && close(d.dE1dx, fd11) && close(d.dE1dy, fd12) && close(d.dE2dx, fd21) &&
                     close(d.dE2dy, fd22);
            }
        }
        record("derivative_fd_oracle", ok);
    }

    // Intermediate coercivity bound on seeded random fields.
    {
        CoefficientField field = coefficient_field_from(s);
        if (field.is_homogeneous()) field.m = 6;
        const Mesh mesh = build_structured_mesh(3);
        const ProbeReport rep = coercivity_probe(mesh, field, 200, s.seed);
        record("coercivity_intermediate_bound", rep.intermediate_bound_holds,
               "min_slack=" + std::to_string(rep.min_slack_rel) +
                   " half_norm_bound_fraction=" + std::to_string(rep.half_norm_bound_fraction));
    }

    // Leapfrog invariant conservation (homogeneous medium, no source).
    {
        const Mesh mesh = build_structured_mesh(4);
        const CoefficientField hom = CoefficientField::homogeneous();
        double tau = 0.5 * cfl_max_tau(mesh, hom, s.cfl_C);
        if (cfg.has("time.tau") && s.cfl_override) tau = s.tau;
        const SchemeOperators ops = SchemeOperators::build(mesh, hom, tau);
        const VectorField f0 =
            manufactured::interpolate([&](Vec2 p, double) { return manufactured::exact_E(hom, p, 0.5); },
                                      mesh, 0.0);
        StepState st = init_state(f0, VectorField(mesh), tau);
        const VectorField zero(mesh);
        std::vector<double> work(f0.dof.size());
        auto invariant = [&](const StepState& state) {
            double kinetic = 0.0;
            for (std::size_t i = 0; i < state.E_curr.dof.size(); ++i) {
                const double d = (state.E_curr.dof[i] - state.E_prev.dof[i]) / tau;
                kinetic += ops.M1.diag[i] * d * d;
            }
            ops.K.apply(state.E_curr.dof, work);
            return kinetic + dot(state.E_prev.dof, work);
        };
        double first = 0.0, max_drift = 0.0;
        bool blew_up = false;
        try {
            for (int k = 1; k <= 500; ++k) {
                step(st, ops, zero);
                const double inv = invariant(st);
                if (k == 1)
                    first = inv;
                else
                    max_drift = std::max(max_drift, std::abs(inv - first) / std::abs(first));
                if (!std::isfinite(inv)) {
                    blew_up = true;
                    break;
                }
            }
        } catch (const BlowUpError&) {
            blew_up = true;
        }
        record("leapfrog_conservation", !blew_up && max_drift <= 1e-8,
               "drift=" + std::to_string(max_drift));
    }

    // Dirichlet masking is idempotent and annihilates boundary-supported fields.
    {
        const Mesh mesh = build_structured_mesh(3);
        const SparseOperator K1 = apply_dirichlet(stiffness(mesh), mesh);
        const SparseOperator K2 = apply_dirichlet(K1, mesh);
        bool ok = K1.nnz() == K2.nnz();
        if (ok) {
            for (std::size_t i = 0; i < K1.vals.size(); ++i)
                ok = ok && K1.vals[i] == K2.vals[i] && K1.cols[i] == K2.cols[i];
        }
        VectorField bdry_only(mesh);
        for (int v : mesh.boundary_nodes) {
            bdry_only.comp(v, 0) = 1.0;
            bdry_only.comp(v, 1) = -2.0;
        }
        const VectorField masked = apply_dirichlet(bdry_only, mesh);
        for (double x : masked.dof) ok = ok && x == 0.0;
        record("dirichlet_idempotence", ok);
    }

    bool all_pass = true;
    for (const PropertyResult& r : results) {
        log << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) log << " (" << r.detail << ")";
        log << "\n";
        all_pass = all_pass && r.pass;
    }
    log << (all_pass ? "verify: all properties passed\n" : "verify: FAILURES present\n");
    return all_pass ? kExitOk : kExitFailure;
}

int dispatch_command(const RunConfig& cfg, std::ostream& log) {
    if (cfg.command == "convergence") return cmd_convergence(cfg, log);
    if (cfg.command == "solve") return cmd_solve(cfg, log);
    if (cfg.command == "verify") return cmd_verify(cfg, log);
    if (cfg.command == "cfl") return cmd_cfl(cfg, log);
    throw ConfigError("unknown command '" + cfg.command +
                      "' (expected convergence|solve|verify|cfl)");
}

}  // namespace maxwell2d
