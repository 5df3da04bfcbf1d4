#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace maxwell2d {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct Triangle {
    std::array<int, 3> v;  // counter-clockwise
};

// Area and the constant gradients of the three hat functions.
struct ElementGeometry {
    double area = 0.0;
    std::array<Vec2, 3> grad{};
};

ElementGeometry triangle_geometry(Vec2 a, Vec2 b, Vec2 c);

// Structured conforming triangulation of the unit square at mesh size
// h = 2^-level. Each grid cell is split along its lower-left to
// upper-right diagonal. Immutable after construction.
struct Mesh {
    int level = 0;
    double h = 0.0;
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<int> boundary_nodes;        // sorted vertex indices on the unit-square boundary
    std::vector<std::uint8_t> is_boundary;  // per-vertex flag
    std::vector<ElementGeometry> elem_geom;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int num_dofs() const { return 2 * num_vertices(); }

    const ElementGeometry& geometry(int elem) const;
};

// level in [1, 12]; throws std::invalid_argument otherwise.
Mesh build_structured_mesh(int level);

// Sections `# vertices` (id,x,y) and `# triangles` (id,v0,v1,v2).
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

}  // namespace maxwell2d
