#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "stg/ambient.hpp"

using namespace stg;

namespace {

ExactMatrix dz(long den, long u, long v, long w) {
    return ExactMatrix::diag({CycNum::zeta(den, u), CycNum::zeta(den, v), CycNum::zeta(den, w)});
}

ExactMatrix perm3(int a, int b, int c) {
    ExactMatrix m(3);
    m(a, 0) = 1;
    m(b, 1) = 1;
    m(c, 2) = 1;
    return m;
}

FiniteMatrixGroup proj(std::vector<GroupElement> gens) { return generate_closure(gens, 3); }
FiniteMatrixGroup proj(std::vector<ExactMatrix> gens) { return generate_closure(gens, 3); }

FiniteMatrixGroup conjugated(const FiniteMatrixGroup& g, const ExactMatrix& v) {
    GroupElement gv(v), gi(v.inverse());
    std::vector<GroupElement> gens;
    for (const auto& e : g.generators) gens.push_back(gv * e * gi);
    return generate_closure(gens, g.projective_scalars);
}

// Oracle for cyclic diagonal groups <diag(z^a, z^b, z^c)> in PSU(3): conjugate
// iff some generator power has the same eigenvalue multiset up to a scalar.
bool cyclic_oracle(long n, std::array<long, 3> x, std::array<long, 3> y) {
    for (long k = 1; k <= n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        for (long s = 0; s < n; ++s) {
            std::array<long, 3> p{}, q = y;
            for (int i = 0; i < 3; ++i) p[static_cast<size_t>(i)] = ((x[static_cast<size_t>(i)] * k + s) % n + n) % n;
            for (auto& v : q) v = (v % n + n) % n;
            std::sort(p.begin(), p.end());
            std::sort(q.begin(), q.end());
            if (p == q) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("ambient conjugacy examples") {
    auto psu = AmbientModel::psu3();
    CHECK(ambient_subgroup_conjugate(proj(std::vector<ExactMatrix>{dz(7, 1, 2, 4)}),
                                     proj(std::vector<ExactMatrix>{dz(7, 2, 4, 1)}), psu));
    ExactMatrix a = ExactMatrix::diag({1, -1, -1}), b = ExactMatrix::diag({-1, -1, 1});
    CHECK(ambient_subgroup_conjugate(proj(std::vector<ExactMatrix>{a}), proj(std::vector<ExactMatrix>{b}), psu));
    CHECK(ambient_subgroup_conjugate(generate_closure(std::vector<ExactMatrix>{a}),
                                     generate_closure(std::vector<ExactMatrix>{b}), AmbientModel::so3()));
    CHECK_FALSE(ambient_subgroup_conjugate(proj(std::vector<ExactMatrix>{dz(4, 0, 1, 3)}),
                                           proj(std::vector<ExactMatrix>{dz(4, 2, 1, 1)}), psu));
    CHECK_FALSE(ambient_subgroup_conjugate(proj(std::vector<ExactMatrix>{dz(4, 0, 1, 3)}),
                                           proj(std::vector<ExactMatrix>{dz(4, 2, 1, 1)}), AmbientModel::psu3_c2()));
}

TEST_CASE("lift sizes") {
    FiniteMatrixGroup h0 = proj(std::vector<ExactMatrix>{dz(7, 1, 2, 4), perm3(1, 2, 0)});
    ProjectiveLift l(h0);
    CHECK(h0.order() == 21);
    CHECK(l.order() == 63);
    CHECK(l.lift_of(h0.table().all()).count() == 63);
    Bits triv(h0.order());
    triv.set(0);
    CHECK(l.lift_of(triv).count() == 3);
    FiniteMatrixGroup ha = proj(std::vector<GroupElement>{GroupElement(dz(7, 1, 2, 4)), GroupElement(perm3(1, 2, 0)),
                                                         GroupElement(ExactMatrix::identity(3), true)});
    ProjectiveLift la(ha);
    CHECK(ha.order() == 42);
    CHECK(la.order() == 126);
    CHECK(la.has_antiunitary());
    // every lifted element maps into the source and the table is a group
    for (int x = 0; x < la.order(); ++x) CHECK(la.table().mul(x, la.table().inv(x)) == 0);
}

TEST_CASE("cyclic diagonal groups agree with the eigenvalue oracle") {
    std::mt19937 rng(7);
    auto psu = AmbientModel::psu3();
    for (int trial = 0; trial < 150; ++trial) {
        long n = 2 + static_cast<long>(rng() % 11);
        std::array<long, 3> x{}, y{};
        for (auto& v : x) v = static_cast<long>(rng() % static_cast<unsigned>(n));
        // bias toward related pairs
        if (trial % 3 == 0) {
            long k = 1 + static_cast<long>(rng() % static_cast<unsigned>(n)), s = static_cast<long>(rng() % static_cast<unsigned>(n));
            for (int i = 0; i < 3; ++i) y[static_cast<size_t>((i + trial) % 3)] = x[static_cast<size_t>(i)] * k + s;
        } else {
            for (auto& v : y) v = static_cast<long>(rng() % static_cast<unsigned>(n));
        }
        auto g1 = proj(std::vector<ExactMatrix>{dz(n, x[0], x[1], x[2])});
        auto g2 = proj(std::vector<ExactMatrix>{dz(n, y[0], y[1], y[2])});
        CAPTURE(n);
        CAPTURE(trial);
        CHECK(ambient_subgroup_conjugate(g1, g2, psu) == cyclic_oracle(n, x, y));
    }
}

TEST_CASE("conjugation invariance with antiunitary elements") {
    FiniteMatrixGroup ha = proj(std::vector<GroupElement>{GroupElement(dz(7, 1, 2, 4)), GroupElement(perm3(1, 2, 0)),
                                                         GroupElement(ExactMatrix::identity(3), true)});
    ExactMatrix v = perm3(2, 0, 1) * dz(5, 1, 3, 1);
    FiniteMatrixGroup hb = conjugated(ha, v);
    CHECK(ambient_subgroup_conjugate(ha, hb, AmbientModel::psu3_c2()));
    CHECK_THROWS_AS(ambient_subgroup_conjugate(ha, hb, AmbientModel::psu3()), std::invalid_argument);
    // conjugation by the (non-monomial) Fourier matrix
    CycNum w = CycNum::zeta(3), r3 = CycNum::sqrt_rational(3);
    ExactMatrix f = ExactMatrix::from_rows({{1, 1, 1}, {1, w, w * w}, {1, w * w, w}}) * r3.inverse();
    REQUIRE(f.is_unitary());
    FiniteMatrixGroup hf = conjugated(ha, f);
    CHECK(hf.order() == 42);
    CHECK(ambient_subgroup_conjugate(ha, hf, AmbientModel::psu3_c2()));
    // unitary vs antiunitary-extended groups of the same order never match
    FiniteMatrixGroup h42 = proj(std::vector<ExactMatrix>{dz(7, 1, 2, 4), perm3(1, 2, 0), ExactMatrix::diag({1, -1, -1})});
    CHECK_FALSE(ambient_subgroup_conjugate(ha, h42, AmbientModel::psu3_c2()));
}

TEST_CASE("conjugacy is an equivalence relation on a sample") {
    std::vector<FiniteMatrixGroup> gs;
    ExactMatrix v = perm3(1, 0, 2) * dz(9, 2, 0, 1);
    for (const auto& base : {std::vector<ExactMatrix>{dz(7, 1, 2, 4)}, std::vector<ExactMatrix>{dz(7, 1, 1, 5)},
                             std::vector<ExactMatrix>{dz(4, 0, 1, 3)}, std::vector<ExactMatrix>{dz(4, 2, 1, 1)},
                             std::vector<ExactMatrix>{dz(7, 1, 2, 4), perm3(1, 2, 0)}}) {
        gs.push_back(proj(base));
        gs.push_back(conjugated(gs.back(), v));
    }
    const size_t n = gs.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = ambient_subgroup_conjugate(gs[i], gs[j], AmbientModel::psu3());
    for (size_t i = 0; i < n; ++i) {
        CHECK(r[i][i]);
        for (size_t j = 0; j < n; ++j) {
            CHECK(r[i][j] == r[j][i]);
            for (size_t k = 0; k < n; ++k)
                if (r[i][j] && r[j][k]) CHECK(r[i][k]);
        }
    }
    for (size_t i = 0; i < n; i += 2) CHECK(r[i][i + 1]);
    CHECK_FALSE(r[0][2]);
}

TEST_CASE("finite and SO3 models") {
    auto w = AmbientModel::wreath();
    auto sub = [](ExactMatrix m) { return generate_closure(std::vector<ExactMatrix>{std::move(m)}); };
    CHECK(ambient_subgroup_conjugate(sub(ExactMatrix::diag({-1, 1, 1})), sub(ExactMatrix::diag({1, 1, -1})), w));
    CHECK_FALSE(ambient_subgroup_conjugate(sub(ExactMatrix::diag({-1, 1, 1})), sub(ExactMatrix::diag({-1, -1, 1})), w));
    CHECK_FALSE(ambient_subgroup_conjugate(sub(ExactMatrix::diag({-1, -1, 1})), sub(perm3(1, 0, 2)), w));
    ExactMatrix r = ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
    auto oct = generate_closure(std::vector<ExactMatrix>{r, perm3(1, 2, 0)});
    auto oct2 = conjugated(oct, ExactMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(ambient_subgroup_conjugate(oct, oct2, AmbientModel::so3()));
    // C4 rotations vs C4 generated by a rotary reflection: different traces
    auto c4 = sub(r);
    auto c4b = sub(ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, -1}}));
    CHECK_FALSE(ambient_subgroup_conjugate(c4, c4b, AmbientModel::so3()));
}
