#include "maxwell2d/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace maxwell2d {

std::array<std::array<double, 3>, 3> local_stiffness(const ElementGeometry& g) {
    std::array<std::array<double, 3>, 3> k{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k[i][j] = g.area * dot(g.grad[i], g.grad[j]);
    return k;
}

DiagonalOperator lumped_mass(const Mesh& mesh, const NodalScalarField& weight,
                             bool require_positive) {
    if (weight.values.size() != mesh.vertices.size())
        throw std::invalid_argument("lumped_mass: weight field does not match mesh");
    const int nv = mesh.num_vertices();
    std::vector<double> node_lump(static_cast<std::size_t>(nv), 0.0);
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const double third_area = mesh.elem_geom[static_cast<std::size_t>(e)].area / 3.0;
        for (int v : mesh.triangles[static_cast<std::size_t>(e)].v)
            node_lump[static_cast<std::size_t>(v)] += third_area;
    }
    DiagonalOperator op;
    op.dim = mesh.num_dofs();
    op.diag.resize(static_cast<std::size_t>(op.dim));
    for (int i = 0; i < nv; ++i) {
        const double m = weight.values[static_cast<std::size_t>(i)] * node_lump[static_cast<std::size_t>(i)];
        if (!mesh.is_boundary[static_cast<std::size_t>(i)]) {
            if (m < 0.0 || (require_positive && m <= 0.0))
                throw std::runtime_error("lumped_mass: nonpositive entry at free node " +
                                         std::to_string(i));
        }
        op.diag[static_cast<std::size_t>(2 * i)] = m;
        op.diag[static_cast<std::size_t>(2 * i + 1)] = m;
    }
    return op;
}

SparseOperator stiffness(const Mesh& mesh) {
    std::vector<int> rows, cols;
    std::vector<double> vals;
    const std::size_t guess = static_cast<std::size_t>(mesh.num_triangles()) * 18;
    rows.reserve(guess);
    cols.reserve(guess);
    vals.reserve(guess);
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const auto k = local_stiffness(mesh.elem_geom[static_cast<std::size_t>(e)]);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int c = 0; c < 2; ++c) {
                    rows.push_back(2 * t.v[i] + c);
                    cols.push_back(2 * t.v[j] + c);
                    vals.push_back(k[i][j]);
                }
            }
        }
    }
    return csr_from_triplets(mesh.num_dofs(), rows, cols, vals);
}

SparseOperator divdiv_stab(const Mesh& mesh, const NodalScalarField& eps_h,
                           const TriQuadRule& rule) {
    if (eps_h.values.size() != mesh.vertices.size())
        throw std::invalid_argument("divdiv_stab: eps field does not match mesh");
    std::vector<int> rows, cols;
    std::vector<double> vals;
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        const ElementGeometry& g = mesh.elem_geom[static_cast<std::size_t>(e)];
        const double w0 = eps_h.values[static_cast<std::size_t>(t.v[0])] - 1.0;
        const double w1 = eps_h.values[static_cast<std::size_t>(t.v[1])] - 1.0;
        const double w2 = eps_h.values[static_cast<std::size_t>(t.v[2])] - 1.0;
        if (w0 == 0.0 && w1 == 0.0 && w2 == 0.0) continue;  // operator vanishes where eps_h = 1

        const Vec2 grad_w = w0 * g.grad[0] + w1 * g.grad[1] + w2 * g.grad[2];  // grad(eps_h - 1)
        const std::array<double, 3> w = {w0, w1, w2};
        // Entry ((i,a),(j,b)) = sum_q area*wt * d_b((eps_h-1) phi_j)(x_q) * (grad phi_i)_a.
        // d_b((eps_h-1) phi_j) = (grad eps_h)_b phi_j + (eps_h-1) (grad phi_j)_b, both linear.
        for (const TriQuadPoint& q : rule.points) {
            const double wq = g.area * q.weight;
            const double eps_m1_q = w[0] * q.bary[0] + w[1] * q.bary[1] + w[2] * q.bary[2];
            for (int j = 0; j < 3; ++j) {
                const double phi_j = q.bary[static_cast<std::size_t>(j)];
                const Vec2 dcol = {grad_w.x * phi_j + eps_m1_q * g.grad[j].x,
                                   grad_w.y * phi_j + eps_m1_q * g.grad[j].y};
                for (int i = 0; i < 3; ++i) {
                    for (int a = 0; a < 2; ++a) {
                        const double row_fac = a == 0 ? g.grad[i].x : g.grad[i].y;
                        for (int b = 0; b < 2; ++b) {
                            const double col_fac = b == 0 ? dcol.x : dcol.y;
                            rows.push_back(2 * t.v[i] + a);
                            cols.push_back(2 * t.v[j] + b);
                            vals.push_back(wq * row_fac * col_fac);
                        }
                    }
                }
            }
        }
    }
    return csr_from_triplets(mesh.num_dofs(), rows, cols, vals);
}

SparseOperator apply_dirichlet(SparseOperator op, const Mesh& mesh) {
    if (op.dim != mesh.num_dofs())
        throw std::invalid_argument("apply_dirichlet: operator does not match mesh");
    auto on_boundary = [&](int dof) {
        return mesh.is_boundary[static_cast<std::size_t>(dof / 2)] != 0;
    };
    std::vector<int> rows, cols;
    std::vector<double> vals;
    rows.reserve(op.nnz());
    cols.reserve(op.nnz());
    vals.reserve(op.nnz());
    for (int i = 0; i < op.dim; ++i) {
        if (on_boundary(i)) continue;
        for (int k = op.row_offsets[static_cast<std::size_t>(i)];
             k < op.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const int j = op.cols[static_cast<std::size_t>(k)];
            if (on_boundary(j)) continue;
            rows.push_back(i);
            cols.push_back(j);
            vals.push_back(op.vals[static_cast<std::size_t>(k)]);
        }
    }
    for (int i = 0; i < op.dim; ++i) {
        if (on_boundary(i)) {
            rows.push_back(i);
            cols.push_back(i);
            vals.push_back(1.0);
        }
    }
    return csr_from_triplets(op.dim, rows, cols, vals);
}

DiagonalOperator apply_dirichlet(DiagonalOperator op, const Mesh& mesh) {
    if (op.dim != mesh.num_dofs())
        throw std::invalid_argument("apply_dirichlet: operator does not match mesh");
    for (int i = 0; i < op.dim; ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i / 2)])
            op.diag[static_cast<std::size_t>(i)] = 1.0;
    }
    return op;
}

VectorField apply_dirichlet(VectorField f, const Mesh& mesh) {
    if (f.size() != mesh.num_dofs())
        throw std::invalid_argument("apply_dirichlet: field does not match mesh");
    for (int i = 0; i < f.size(); ++i) {
        if (mesh.is_boundary[static_cast<std::size_t>(i / 2)])
            f.dof[static_cast<std::size_t>(i)] = 0.0;
    }
    return f;
}

double quad_form_a(const VectorField& u, const VectorField& v, const SparseOperator& K,
                   const SparseOperator& D) {
    if (u.size() != K.dim || v.size() != K.dim || D.dim != K.dim)
        throw std::invalid_argument("quad_form_a: dimension mismatch");
    std::vector<double> work(static_cast<std::size_t>(K.dim));
    K.apply(u.dof, work);
    D.apply_add(u.dof, work);
    return dot(v.dof, work);
}

double quad_form_a(const VectorField& u, const VectorField& v, const Mesh& mesh,
                   const NodalScalarField& eps_h) {
    const SparseOperator K = apply_dirichlet(stiffness(mesh), mesh);
    const SparseOperator D = apply_dirichlet(divdiv_stab(mesh, eps_h), mesh);
    return quad_form_a(u, v, K, D);
}

void write_operator_coo(const SparseOperator& op, std::ostream& out) {
    char buf[96];
    for (int i = 0; i < op.dim; ++i) {
        for (int k = op.row_offsets[static_cast<std::size_t>(i)];
             k < op.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i, op.cols[static_cast<std::size_t>(k)],
                          op.vals[static_cast<std::size_t>(k)]);
            out << buf;
        }
    }
}

}  // namespace maxwell2d
