#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "maxwell2d/mesh.hpp"

using namespace maxwell2d;

TEST_CASE("structured mesh counts match the refinement-level formulas") {
    SUBCASE("level 3") {
        const Mesh m = build_structured_mesh(3);
        CHECK(m.num_triangles() == 128);
        CHECK(m.num_vertices() == 81);
        CHECK(m.h == doctest::Approx(0.125));
    }
    SUBCASE("level 6") {
        const Mesh m = build_structured_mesh(6);
        CHECK(m.num_triangles() == 8192);
        CHECK(m.num_vertices() == 4225);
    }
    SUBCASE("level 1") {
        const Mesh m = build_structured_mesh(1);
        CHECK(m.num_triangles() == 8);
        CHECK(m.num_vertices() == 9);
        CHECK(m.h == doctest::Approx(0.5));
    }
}

TEST_CASE("level outside [1,12] is rejected") {
    CHECK_THROWS_AS(build_structured_mesh(0), std::invalid_argument);
    CHECK_THROWS_AS(build_structured_mesh(13), std::invalid_argument);
    CHECK_THROWS_AS(build_structured_mesh(-2), std::invalid_argument);
}

TEST_CASE("element geometry: areas and hat-function gradients") {
    const Mesh m = build_structured_mesh(3);
    const double expected_area = m.h * m.h / 2.0;
    double total = 0.0;
    for (int e = 0; e < m.num_triangles(); ++e) {
        const ElementGeometry& g = m.geometry(e);
        CHECK(g.area == doctest::Approx(expected_area).epsilon(1e-14));
        CHECK(g.area > 0.0);
        const Vec2 s = g.grad[0] + g.grad[1] + g.grad[2];
        CHECK(std::abs(s.x) <= 1e-13);
        CHECK(std::abs(s.y) <= 1e-13);
        total += g.area;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(m.geometry(-1), std::out_of_range);
    CHECK_THROWS_AS(m.geometry(m.num_triangles()), std::out_of_range);
}

TEST_CASE("unit right triangle has the textbook barycentric gradients") {
    const ElementGeometry g = triangle_geometry({0, 0}, {1, 0}, {0, 1});
    CHECK(g.area == doctest::Approx(0.5));
    CHECK(g.grad[0].x == doctest::Approx(-1.0));
    CHECK(g.grad[0].y == doctest::Approx(-1.0));
    CHECK(g.grad[1].x == doctest::Approx(1.0));
    CHECK(g.grad[1].y == doctest::Approx(0.0));
    CHECK(g.grad[2].x == doctest::Approx(0.0));
    CHECK(g.grad[2].y == doctest::Approx(1.0));
}

TEST_CASE("boundary tagging") {
    SUBCASE("counts") {
        CHECK(build_structured_mesh(3).boundary_nodes.size() == 32);
        CHECK(build_structured_mesh(1).boundary_nodes.size() == 8);
    }
    SUBCASE("exactly the perimeter nodes") {
        const Mesh m = build_structured_mesh(3);
        std::set<int> tagged(m.boundary_nodes.begin(), m.boundary_nodes.end());
        CHECK(tagged.count(0) == 1);  // corner (0,0)
        for (int i = 0; i < m.num_vertices(); ++i) {
            const Vec2 p = m.vertices[static_cast<std::size_t>(i)];
            const bool on_perimeter = p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
            CHECK(on_perimeter == (tagged.count(i) == 1));
            CHECK(on_perimeter == (m.is_boundary[static_cast<std::size_t>(i)] != 0));
        }
    }
}

TEST_CASE("mesh is conforming: interior edges shared by exactly two triangles") {
    const Mesh m = build_structured_mesh(3);
    std::map<std::pair<int, int>, int> edges;
    for (const Triangle& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            int a = t.v[k], b = t.v[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edges[{a, b}] += 1;
        }
    }
    for (const auto& [edge, count] : edges) {
        CHECK(count <= 2);
        if (count == 1) {
            CHECK(m.is_boundary[static_cast<std::size_t>(edge.first)]);
            CHECK(m.is_boundary[static_cast<std::size_t>(edge.second)]);
        }
    }
}

TEST_CASE("refinement nesting: vertices of level l appear in level l+1") {
    const Mesh coarse = build_structured_mesh(3);
    const Mesh fine = build_structured_mesh(4);
    std::set<std::pair<double, double>> fine_pts;
    for (const Vec2& p : fine.vertices) fine_pts.insert({p.x, p.y});
    for (const Vec2& p : coarse.vertices) CHECK(fine_pts.count({p.x, p.y}) == 1);
}

TEST_CASE("csv dump carries both sections") {
    const Mesh m = build_structured_mesh(1);
    std::ostringstream out;
    write_mesh_csv(m, out);
    const std::string text = out.str();
    CHECK(text.find("# vertices") != std::string::npos);
    CHECK(text.find("# triangles") != std::string::npos);
    CHECK(text.find("id,x,y") != std::string::npos);
    CHECK(text.find("id,v0,v1,v2") != std::string::npos);
}
