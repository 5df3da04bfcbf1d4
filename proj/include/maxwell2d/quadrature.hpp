#pragma once

#include <array>
#include <span>
#include <vector>

namespace maxwell2d {

// Symmetric quadrature rules on the reference triangle in barycentric
// coordinates; weights sum to 1 and scale by the element area.
struct TriQuadPoint {
    std::array<double, 3> bary;
    double weight;
};

struct TriQuadRule {
    int degree = 0;
    std::vector<TriQuadPoint> points;
};

const TriQuadRule& tri_rule_centroid();     // degree 1, 1 point
const TriQuadRule& tri_rule_midpoint3();    // degree 2, edge midpoints
const TriQuadRule& tri_rule_degree4();      // 6 points
const TriQuadRule& tri_rule_degree7();      // 13 points

}  // namespace maxwell2d
