#include "maxwell2d/quadrature.hpp"

namespace maxwell2d {

namespace {

TriQuadRule make_centroid() {
    constexpr double third = 1.0 / 3.0;
    return {1, {{{third, third, third}, 1.0}}};
}

TriQuadRule make_midpoint3() {
    return {2,
            {{{0.5, 0.5, 0.0}, 1.0 / 3.0},
             {{0.0, 0.5, 0.5}, 1.0 / 3.0},
             {{0.5, 0.0, 0.5}, 1.0 / 3.0}}};
}

void push_sym3(TriQuadRule& r, double a, double b, double w) {
    r.points.push_back({{a, b, b}, w});
    r.points.push_back({{b, a, b}, w});
    r.points.push_back({{b, b, a}, w});
}

void push_sym6(TriQuadRule& r, double a, double b, double c, double w) {
    r.points.push_back({{a, b, c}, w});
    r.points.push_back({{a, c, b}, w});
    r.points.push_back({{b, a, c}, w});
    r.points.push_back({{b, c, a}, w});
    r.points.push_back({{c, a, b}, w});
    r.points.push_back({{c, b, a}, w});
}

TriQuadRule make_degree4() {
    TriQuadRule r;
    r.degree = 4;
    push_sym3(r, 0.816847572980459, 0.091576213509771, 0.109951743655322);
    push_sym3(r, 0.108103018168070, 0.445948490915965, 0.223381589678011);
    return r;
}

TriQuadRule make_degree7() {
    TriQuadRule r;
    r.degree = 7;
    constexpr double third = 1.0 / 3.0;
    r.points.push_back({{third, third, third}, -0.149570044467670});
    push_sym3(r, 0.479308067841923, 0.260345966079038, 0.175615257433204);
    push_sym3(r, 0.869739794195568, 0.065130102902216, 0.053347235608839);
    push_sym6(r, 0.638444188569809, 0.312865496004875, 0.048690315425316, 0.077113760890257);
    return r;
}

}  // namespace

const TriQuadRule& tri_rule_centroid() {
    static const TriQuadRule r = make_centroid();
    return r;
}

const TriQuadRule& tri_rule_midpoint3() {
    static const TriQuadRule r = make_midpoint3();
    return r;
}

const TriQuadRule& tri_rule_degree4() {
    static const TriQuadRule r = make_degree4();
    return r;
}

const TriQuadRule& tri_rule_degree7() {
    static const TriQuadRule r = make_degree7();
    return r;
}

}  // namespace maxwell2d
