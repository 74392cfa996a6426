#include <doctest.h>

#include <map>
#include <set>

#include "stg/axioms.hpp"

using namespace stg;

namespace {

// Independent table: (dim G0, dim End(C^6)^{G0}) for each catalog id.
const std::map<std::string, std::pair<int, int>> kExpected = {
    {"USp6", {21, 1}},       {"U3", {9, 2}},          {"SU2xUSp4", {13, 2}}, {"U1xUSp4", {11, 3}},
    {"SU2xSU2xSU2", {9, 3}}, {"U1xSU2xSU2", {7, 4}},  {"U1xU1xSU2", {5, 5}},  {"U1xU1xU1", {3, 6}},
    {"SU2xSU2_2", {6, 5}},   {"U1xSU2_2", {4, 6}},    {"SU2xU1_2", {4, 9}},   {"U1xU1_2", {2, 10}},
    {"SU2_3", {3, 9}},       {"U1_3", {1, 18}},       {"SO3", {3, 4}},        {"SU3", {8, 2}}};

}  // namespace

TEST_CASE("catalog shape") {
    const auto& cat = component_catalog();
    REQUIRE(cat.size() == 16);
    std::set<std::string> types;
    for (const auto& c : cat) {
        CAPTURE(c.id);
        REQUIRE(kExpected.count(c.id));
        CHECK(c.dim == kExpected.at(c.id).first);
        CHECK(c.torus_weights.size() == 6);
        for (const auto& g : c.test_generators) {
            CHECK(check_usp_membership(g));
            CHECK(c.contains(g));
        }
        if (c.in_table1()) types.insert(c.absolute_type);
        // sum of factor dimensions equals the Lie algebra dimension
        CHECK(LieAlgebraDescriptor::parse(c.lie_algebra).dim() == c.dim);
        CHECK(LieAlgebraDescriptor::parse(c.lie_algebra).rank() == c.torus_rank());
    }
    CHECK(types.size() == 14);
    CHECK(component("N").id == "U1_3");
    CHECK(component("SU2_3").absolute_type == "M");
    CHECK_THROWS_AS(component("Q"), UnknownComponent);
}

TEST_CASE("commutant dimensions from test generators") {
    for (const auto& c : component_catalog()) {
        CAPTURE(c.id);
        auto b = commutant_basis(c.test_generators, 6);
        CHECK(static_cast<int>(b.dimension()) == kExpected.at(c.id).second);
        CHECK(c.commutant_dim == kExpected.at(c.id).second);
        CHECK(b.closed_under_multiplication);
    }
}

TEST_CASE("membership") {
    const auto& h = component("H");
    CHECK(h.contains(h.torus_element({1, 2, 3}, 5)));
    CHECK_FALSE(h.contains(plane_block({0}, 0, 1, -1, 0)));
    const auto& n = component("N");
    CHECK(n.contains(n.torus_element({3}, 11)));
    CHECK_FALSE(n.contains(h.torus_element({1, 2, 3}, 5)));
    const auto& so3 = component("SO3");
    CHECK_FALSE(so3.contains(plane_block({0}, -1, 0, 0, -1)));
    CHECK(component("U3").contains(plane_block({0}, CycNum::zeta(5), 0, 0, CycNum::zeta(5, -1))));
    CHECK_FALSE(component("SU3").contains(plane_block({0}, CycNum::zeta(5), 0, 0, CycNum::zeta(5, -1))));
    CHECK(component("USp6").contains(symplectic_form(6)));
    CHECK_FALSE(component("USp6").contains(ExactMatrix::diag({1, 1, 1, 1, 1, -1})));
    // torus elements lie in every component (the SO3 torus is not diagonal in these coordinates)
    for (const auto& c : component_catalog()) {
        if (c.id == "SO3") continue;
        std::vector<long> k;
        for (int i = 0; i < c.torus_rank(); ++i) k.push_back(i + 1);
        CHECK(c.contains(c.torus_element(k, 9)));
    }
}

TEST_CASE("hodge circles") {
    auto h = hodge_circles(component("H"));
    CHECK(h.circles.size() == 8);
    std::set<std::vector<int>> ws;
    for (const auto& th : h.circles) ws.insert(th.weights);
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) CHECK(ws.count({a, b, c}));
    CHECK(h.dense);
    auto n = hodge_circles(component("N"));
    REQUIRE(n.circles.size() == 2);
    CHECK(n.dense);
    for (const auto& th : n.circles) {
        // exponent multiset {+1 x3, -1 x3}, constant on e and on f
        int s = th.exponents[0];
        CHECK(th.exponents == std::vector<int>{s, s, s, -s, -s, -s});
    }
    auto u3 = hodge_circles(component("U3"));
    CHECK(u3.dense);
    CHECK(u3.generated_dim == 9);
    for (const auto& c : component_catalog()) {
        CAPTURE(c.id);
        auto r = hodge_circles(c);
        for (const auto& th : r.circles) {
            int plus = 0;
            for (int e : th.exponents) {
                CHECK((e == 1 || e == -1));
                plus += e == 1;
            }
            CHECK(plus == 3);
        }
        if (c.in_table1()) CHECK(r.dense);
        else CHECK(r.circles.empty());
    }
}

TEST_CASE("ST4 verdicts") {
    for (const auto& c : component_catalog()) {
        CAPTURE(c.id);
        auto r = check_st4(c);
        CHECK(r.commutant_dim == c.commutant_dim);
        if (c.in_table1()) {
            CHECK(r.pass);
            CHECK(r.fixer_dim == c.dim);
        } else {
            CHECK_FALSE(r.pass);
        }
    }
    auto su3 = check_st4(component("SU3"));
    CHECK(su3.fixer_dim == 9);
    auto so3 = check_st4(component("SO3"));
    CHECK(so3.fixer_dim == 3);
    CHECK(std::count(so3.escaping_probes.begin(), so3.escaping_probes.end(), "sign flip on plane 1") == 1);
}

TEST_CASE("lie pipeline survivors are the Table 1 components") {
    auto rep = connected_candidates();
    std::set<std::string> matched;
    for (const auto& cand : rep.after_u2_exclusion) {
        const auto* c = match_candidate(cand);
        REQUIRE(c != nullptr);
        CHECK(c->in_table1());
        matched.insert(c->absolute_type);
    }
    CHECK(matched.size() == 14);
    CHECK(rep.after_u2_exclusion.size() == 14);
}
