#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "stg/lie.hpp"

using namespace stg;

namespace {

// Number of semistandard tableaux of shape (l1, l2) with entries in 1..3.
long ssyt_count_gl3(int l1, int l2) {
    long count = 0;
    std::vector<int> row1(static_cast<size_t>(l1)), row2(static_cast<size_t>(l2));
    std::function<void(int)> fill2;
    std::function<void(int)> fill1 = [&](int i) {
        if (i == l1) {
            fill2(0);
            return;
        }
        for (int v = i ? row1[static_cast<size_t>(i - 1)] : 1; v <= 3; ++v) {
            row1[static_cast<size_t>(i)] = v;
            fill1(i + 1);
        }
    };
    fill2 = [&](int i) {
        if (i == l2) {
            ++count;
            return;
        }
        int lo = std::max(i ? row2[static_cast<size_t>(i - 1)] : 1, row1[static_cast<size_t>(i)] + 1);
        for (int v = lo; v <= 3; ++v) {
            row2[static_cast<size_t>(i)] = v;
            fill2(i + 1);
        }
    };
    fill1(0);
    return count;
}

// Freudenthal for C2 in orthonormal coordinates: alpha1 = e1 - e2 (short),
// alpha2 = 2 e2 (long), omega1 = e1, omega2 = e1 + e2.
long sp4_dim_oracle(int a, int b) {
    const int l1 = a + b, l2 = b;
    const std::vector<std::pair<int, int>> pos{{1, -1}, {1, 1}, {2, 0}, {0, 2}};
    const int r1 = 2, r2 = 1;
    auto norm = [](int x, int y) { return x * x + y * y; };
    const int top = norm(l1 + r1, l2 + r2);
    std::vector<std::pair<int, int>> pts;
    for (int x = -l1; x <= l1; ++x)
        for (int y = -l1; y <= l1; ++y)
            if (((l1 + l2) - (x + y)) % 2 == 0) pts.push_back({x, y});
    std::sort(pts.begin(), pts.end(), [](auto p, auto q) { return 3 * p.first + p.second > 3 * q.first + q.second; });
    std::map<std::pair<int, int>, long> m;
    long total = 0;
    for (auto [x, y] : pts) {
        long val;
        if (x == l1 && y == l2) {
            val = 1;
        } else {
            int den = top - norm(x + r1, y + r2);
            if (den <= 0) continue;
            long num = 0;
            for (auto [ax, ay] : pos)
                for (int k = 1; k <= 4 * l1 + 4; ++k) {
                    auto it = m.find({x + k * ax, y + k * ay});
                    if (it != m.end()) num += it->second * ((x + k * ax) * ax + (y + k * ay) * ay);
                }
            REQUIRE((2 * num) % den == 0);
            val = 2 * num / den;
        }
        if (val) m[{x, y}] = val;
        total += val;
    }
    return total;
}

}  // namespace

TEST_CASE("irrep enumeration examples") {
    auto g2 = enumerate_irreps(LieAlgebraDescriptor::parse("g2"), 7);
    REQUIRE(g2.size() == 2);
    CHECK(g2[0].is_trivial());
    CHECK(g2[1].dimension == 7);

    auto sl2 = enumerate_irreps(LieAlgebraDescriptor::parse("sl2"), 4);
    REQUIRE(sl2.size() == 4);
    for (int d = 1; d <= 4; ++d) CHECK(sl2[static_cast<size_t>(d - 1)].dimension == d);
    CHECK(sl2[1].duality == DualityType::Symplectic);
    CHECK(sl2[2].duality == DualityType::Orthogonal);

    auto so7 = enumerate_irreps(LieAlgebraDescriptor::parse("so7"), 6);
    REQUIRE(so7.size() == 1);
    CHECK(so7[0].is_trivial());
    CHECK(enumerate_irreps(LieAlgebraDescriptor::parse("so7"), 7).back().dimension == 7);
    CHECK(enumerate_irreps(LieAlgebraDescriptor::parse("sp6"), 6).back().duality == DualityType::Symplectic);
    CHECK_THROWS(enumerate_irreps(LieAlgebraDescriptor::parse("sl2"), 65));
}

TEST_CASE("Weyl dimension matches tableau and Freudenthal oracles") {
    for (const auto& v : enumerate_irreps(LieAlgebraDescriptor::parse("sl2"), 20))
        CHECK(v.dimension == v.highest_weight[0] + 1);
    int n3 = 0;
    for (const auto& v : enumerate_irreps(LieAlgebraDescriptor::parse("sl3"), 20)) {
        int a = v.highest_weight[0], b = v.highest_weight[1];
        CHECK(v.dimension == ssyt_count_gl3(a + b, b));
        ++n3;
    }
    CHECK(n3 == 12);  // 1, 3, 3, 6, 6, 8, 10, 10 and two dual pairs of dim 15
    for (const auto& v : enumerate_irreps(LieAlgebraDescriptor::parse("sp4"), 20)) {
        CAPTURE(v.highest_weight[0]);
        CAPTURE(v.highest_weight[1]);
        CHECK(v.dimension == sp4_dim_oracle(v.highest_weight[0], v.highest_weight[1]));
    }
}

TEST_CASE("weight multiplicities are consistent with dimension and duality") {
    for (const char* name : {"sl2", "sl3", "sp4", "g2", "sl4", "so7", "sp6", "sl2+sl2"}) {
        auto alg = LieAlgebraDescriptor::parse(name);
        RootSystem rs(alg.cartan());
        for (const auto& v : enumerate_irreps(alg, 64)) {
            auto w = rs.weights(v.highest_weight);
            long total = 0;
            for (const auto& [mu, m] : w) total += m;
            CAPTURE(name);
            CAPTURE(v.label);
            CHECK(total == v.dimension);
            // weights of the dual are the negatives
            auto wd = rs.weights(rs.dual_weight(v.highest_weight));
            bool neg = true;
            for (const auto& [mu, m] : w) {
                std::vector<int> minus(mu.size());
                for (size_t i = 0; i < mu.size(); ++i) minus[i] = -mu[i];
                auto it = wd.find(minus);
                neg = neg && it != wd.end() && it->second == m;
            }
            CHECK(neg);
            CHECK((v.duality != DualityType::NotSelfDual) == (wd == w));
        }
    }
    // Weyl orders and dimensions
    CHECK(LieAlgebraDescriptor::parse("g2").weyl_order() == 12);
    CHECK(LieAlgebraDescriptor::parse("sp6").weyl_order() == 48);
    CHECK(LieAlgebraDescriptor::parse("sl4").dim() == 15);
    CHECK(LieAlgebraDescriptor::parse("so7").dim() == 21);
    CHECK(LieAlgebraDescriptor::parse("t1+sl3").dim() == 9);
}

TEST_CASE("rank three algebra list") {
    auto all = algebras_of_rank_at_most(3);
    std::map<int, int> by_rank;
    std::set<std::string> names;
    for (const auto& a : all) {
        ++by_rank[a.rank()];
        names.insert(a.name);
    }
    CHECK(by_rank == std::map<int, int>{{1, 2}, {2, 6}, {3, 13}});
    for (const char* n : {"t1", "sl2", "t2", "t1+sl2", "sl2+sl2", "sl3", "sp4", "g2", "t3", "t2+sl2", "t1+sl2+sl2",
                          "t1+sl3", "t1+sp4", "t1+g2", "sl2+sl2+sl2", "sl2+sl3", "sl2+sp4", "sl2+g2", "sl4", "so7", "sp6"})
        CHECK(names.count(n) == 1);
}

TEST_CASE("admissible six-dimensional representations") {
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("sp4")).empty());
    auto sl3 = admissible_sixdim_reps(LieAlgebraDescriptor::parse("sl3"));
    REQUIRE(sl3.size() == 1);
    REQUIRE(sl3[0].summands.size() == 2);
    CHECK(sl3[0].summands[0].first.dimension == 3);
    CHECK(sl3[0].summands[1].first.dimension == 3);
    CHECK(sl3[0].summands[0].first.duality == DualityType::NotSelfDual);
    auto e = admissible_sixdim_reps(LieAlgebraDescriptor::parse("sl2+sl2+sl2"));
    REQUIRE(e.size() == 1);
    CHECK(e[0].summands.size() == 3);
    for (const auto& [v, m] : e[0].summands) {
        CHECK(v.dimension == 2);
        CHECK(m == 1);
    }
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("g2")).empty());
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("so7")).empty());
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("sl4")).empty());
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("sl2+sl3")).empty());
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("sl2")).size() == 4);
    CHECK(admissible_sixdim_reps(LieAlgebraDescriptor::parse("t1+sp4")).size() == 1);

    // every returned representation is self-dual with a symplectic pairing
    for (const auto& alg : algebras_of_rank_at_most(3)) {
        RootSystem rs(alg.cartan());
        for (const auto& rep : admissible_sixdim_reps(alg)) {
            CHECK(rep.dimension() == 6);
            std::map<std::vector<int>, long> w;
            for (const auto& [v, m] : rep.summands)
                for (const auto& [mu, c] : rs.weights(v.highest_weight)) w[mu] += c * m;
            for (const auto& [mu, c] : w) {
                std::vector<int> minus(mu.size());
                for (size_t i = 0; i < mu.size(); ++i) minus[i] = -mu[i];
                CHECK(w[minus] == c);
            }
            for (const auto& [v, m] : rep.summands) {
                if (v.duality == DualityType::Orthogonal) CHECK(m % 2 == 0);
                if (v.is_trivial()) CHECK(alg.torus_rank > 0);
            }
        }
    }
}

TEST_CASE("elimination pipeline") {
    auto r = connected_candidates();
    std::set<std::string> elim(r.eliminated_algebras.begin(), r.eliminated_algebras.end());
    CHECK(elim == std::set<std::string>{"sp4", "g2", "t1+g2", "sl2+g2", "sl2+sl3", "sl4", "so7"});
    CHECK(r.after_hodge.size() == 16);
    CHECK(r.after_u2_exclusion.size() == 14);
    // (algebra, real dimension, commutant dimension) of the surviving groups
    std::set<std::tuple<std::string, int, int>> got, want{
        {"sp6", 21, 1},       {"t1+sl3", 9, 2},  {"sl2+sp4", 13, 2}, {"t1+sp4", 11, 3}, {"sl2+sl2+sl2", 9, 3},
        {"t1+sl2+sl2", 7, 4}, {"t2+sl2", 5, 5},  {"t3", 3, 6},       {"sl2+sl2", 6, 5}, {"t1+sl2", 4, 6},
        {"t1+sl2", 4, 9},     {"t2", 2, 10},     {"sl2", 3, 9},      {"t1", 1, 18}};
    for (const auto& c : r.after_u2_exclusion) got.insert({c.algebra.name, c.dim, c.commutant_dim});
    CHECK(got == want);
    int flagged = 0;
    for (const auto& c : r.after_hodge) {
        CHECK_FALSE(c.hodge.empty());
        flagged += c.u2_factor;
    }
    CHECK(flagged == 2);
    // SO(3) and SU(3) have admissible representations but no Hodge circle
    for (const auto& c : r.after_hodge) {
        CHECK_FALSE((c.algebra.name == "sl3"));
        CHECK_FALSE((c.algebra.name == "sl2" && c.rep.str() == "3⊕3"));
    }
}
