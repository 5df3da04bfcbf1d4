#include "maxwell2d/mesh.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace maxwell2d {

ElementGeometry triangle_geometry(Vec2 a, Vec2 b, Vec2 c) {
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    ElementGeometry g;
    g.area = 0.5 * det;
    g.grad[0] = {(b.y - c.y) / det, (c.x - b.x) / det};
    g.grad[1] = {(c.y - a.y) / det, (a.x - c.x) / det};
    g.grad[2] = {(a.y - b.y) / det, (b.x - a.x) / det};
    return g;
}

const ElementGeometry& Mesh::geometry(int elem) const {
    if (elem < 0 || elem >= num_triangles())
        throw std::out_of_range("Mesh::geometry: element index " + std::to_string(elem) +
                                " out of range [0," + std::to_string(num_triangles()) + ")");
    return elem_geom[static_cast<std::size_t>(elem)];
}

Mesh build_structured_mesh(int level) {
    if (level < 1 || level > 12)
        throw std::invalid_argument("build_structured_mesh: level must be in [1,12], got " +
                                    std::to_string(level));

    Mesh m;
    m.level = level;
    const int n = 1 << level;
    m.h = 1.0 / n;

    const int npx = n + 1;
    m.vertices.reserve(static_cast<std::size_t>(npx) * npx);
    m.is_boundary.assign(static_cast<std::size_t>(npx) * npx, 0);
    for (int iy = 0; iy <= n; ++iy) {
        for (int ix = 0; ix <= n; ++ix) {
            m.vertices.push_back({static_cast<double>(ix) / n, static_cast<double>(iy) / n});
            if (ix == 0 || iy == 0 || ix == n || iy == n) {
                const int id = iy * npx + ix;
                m.is_boundary[static_cast<std::size_t>(id)] = 1;
                m.boundary_nodes.push_back(id);
            }
        }
    }

    auto vid = [npx](int ix, int iy) { return iy * npx + ix; };

    m.triangles.reserve(2u * n * n);
    for (int cy = 0; cy < n; ++cy) {
        for (int cx = 0; cx < n; ++cx) {
            const int ll = vid(cx, cy);
            const int lr = vid(cx + 1, cy);
            const int ur = vid(cx + 1, cy + 1);
            const int ul = vid(cx, cy + 1);
            m.triangles.push_back({{ll, lr, ur}});
            m.triangles.push_back({{ll, ur, ul}});
        }
    }

    m.elem_geom.reserve(m.triangles.size());
    for (const Triangle& t : m.triangles) {
        m.elem_geom.push_back(
            triangle_geometry(m.vertices[static_cast<std::size_t>(t.v[0])],
                              m.vertices[static_cast<std::size_t>(t.v[1])],
                              m.vertices[static_cast<std::size_t>(t.v[2])]));
    }
    return m;
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
    char buf[128];
    out << "# vertices\nid,x,y\n";
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", i, mesh.vertices[static_cast<std::size_t>(i)].x,
                      mesh.vertices[static_cast<std::size_t>(i)].y);
        out << buf;
    }
    out << "# triangles\nid,v0,v1,v2\n";
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        const Triangle& t = mesh.triangles[static_cast<std::size_t>(e)];
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d\n", e, t.v[0], t.v[1], t.v[2]);
        out << buf;
    }
}

}  // namespace maxwell2d
