#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxwell2d/mesh.hpp"

namespace maxwell2d {

// Nodal 2-component field, node-major layout [E1_i, E2_i].
struct VectorField {
    const Mesh* mesh = nullptr;
    std::vector<double> dof;

    VectorField() = default;
    explicit VectorField(const Mesh& m) : mesh(&m), dof(static_cast<std::size_t>(m.num_dofs()), 0.0) {}

    double& comp(int node, int c) { return dof[static_cast<std::size_t>(2 * node + c)]; }
    double comp(int node, int c) const { return dof[static_cast<std::size_t>(2 * node + c)]; }
    int size() const { return static_cast<int>(dof.size()); }
};

// Compressed sparse row; rows sorted, no duplicate entries.
struct SparseOperator {
    int dim = 0;
    std::vector<int> row_offsets;  // size dim+1
    std::vector<int> cols;
    std::vector<double> vals;

    std::size_t nnz() const { return vals.size(); }

    // y = A x
    void apply(std::span<const double> x, std::span<double> y) const;
    // y += A x
    void apply_add(std::span<const double> x, std::span<double> y) const;
};

// Builds CSR from (row, col, value) triplets, summing duplicates.
SparseOperator csr_from_triplets(int dim, std::vector<int>& rows, std::vector<int>& cols,
                                 std::vector<double>& vals);

struct DiagonalOperator {
    int dim = 0;
    std::vector<double> diag;
};

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace maxwell2d
