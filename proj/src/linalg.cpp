#include "maxwell2d/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace maxwell2d {

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
    assert(static_cast<int>(x.size()) == dim && static_cast<int>(y.size()) == dim);
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int k = row_offsets[static_cast<std::size_t>(i)];
             k < row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            s += vals[static_cast<std::size_t>(k)] *
                 x[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(i)] = s;
    }
}

void SparseOperator::apply_add(std::span<const double> x, std::span<double> y) const {
    assert(static_cast<int>(x.size()) == dim && static_cast<int>(y.size()) == dim);
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int k = row_offsets[static_cast<std::size_t>(i)];
             k < row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            s += vals[static_cast<std::size_t>(k)] *
                 x[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(i)] += s;
    }
}

SparseOperator csr_from_triplets(int dim, std::vector<int>& rows, std::vector<int>& cols,
                                 std::vector<double>& vals) {
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a] != rows[b]) return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    SparseOperator op;
    op.dim = dim;
    op.row_offsets.assign(static_cast<std::size_t>(dim) + 1, 0);
    op.cols.reserve(n);
    op.vals.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t k = order[idx];
        if (!op.cols.empty() && !op.vals.empty()) {
            const int last_row = [&] {
                // row of the previously emitted entry
                return rows[order[idx - 1]];
            }();
            if (last_row == rows[k] && op.cols.back() == cols[k]) {
                op.vals.back() += vals[k];
                continue;
            }
        }
        op.cols.push_back(cols[k]);
        op.vals.push_back(vals[k]);
        ++op.row_offsets[static_cast<std::size_t>(rows[k]) + 1];
    }
    for (int i = 0; i < dim; ++i) {
        op.row_offsets[static_cast<std::size_t>(i) + 1] += op.row_offsets[static_cast<std::size_t>(i)];
    }
    return op;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace maxwell2d
