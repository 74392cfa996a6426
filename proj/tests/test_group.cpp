#include <doctest.h>

#include <set>

#include "stg/group.hpp"

using namespace stg;

namespace {

ExactMatrix perm3(int a, int b, int c) {
    ExactMatrix m(3);
    m(a, 0) = 1;
    m(b, 1) = 1;
    m(c, 2) = 1;
    return m;
}

ExactMatrix dmat(long den, long u, long v, long w) {
    return ExactMatrix::diag({CycNum::zeta(den, u), CycNum::zeta(den, v), CycNum::zeta(den, w)});
}

FiniteMatrixGroup s3() { return generate_closure(std::vector<ExactMatrix>{perm3(1, 0, 2), perm3(1, 2, 0)}); }

FiniteMatrixGroup d4() {
    ExactMatrix r = ExactMatrix::from_rows({{0, -1}, {1, 0}}), f = ExactMatrix::from_rows({{1, 0}, {0, -1}});
    return generate_closure(std::vector<ExactMatrix>{r, f});
}

FiniteMatrixGroup s4_perm() {
    auto p = [](std::vector<int> img) {
        ExactMatrix m(4);
        for (int k = 0; k < 4; ++k) m(img[static_cast<size_t>(k)], k) = 1;
        return m;
    };
    return generate_closure(std::vector<ExactMatrix>{p({1, 0, 2, 3}), p({1, 2, 3, 0})});
}

// Rotation group of the cube.
FiniteMatrixGroup octahedral() {
    ExactMatrix r = ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
    return generate_closure(std::vector<ExactMatrix>{r, perm3(1, 2, 0)});
}

FiniteMatrixGroup sl23() {
    // binary tetrahedral group in SU(2)
    CycNum i = CycNum::i();
    CycNum h = CycNum(mpq_class(1, 2));
    ExactMatrix a = ExactMatrix::diag({i, -i});
    ExactMatrix t = ExactMatrix::from_rows({{(1 + i) * h, (1 + i) * h}, {(-1 + i) * h, (1 - i) * h}});
    return generate_closure(std::vector<ExactMatrix>{a, t});
}

// Oracle: all subgroups by closures of all generator sets of size <= 3,
// then conjugacy classes by direct search.
size_t brute_force_class_count(const CayleyGroup& g) {
    const int n = g.order();
    std::set<std::vector<int>> subs;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) subs.insert(CayleyGroup::elements_of(g.closure({a, b, c})));
    std::vector<std::vector<int>> list(subs.begin(), subs.end());
    std::vector<int> cls(list.size(), -1);
    int next = 0;
    for (size_t u = 0; u < list.size(); ++u) {
        if (cls[u] >= 0) continue;
        cls[u] = next;
        for (int x = 0; x < n; ++x) {
            std::vector<int> c;
            for (int e : list[u]) c.push_back(g.conj(x, e));
            std::sort(c.begin(), c.end());
            auto it = std::lower_bound(list.begin(), list.end(), c);
            if (it != list.end() && *it == c) cls[static_cast<size_t>(it - list.begin())] = next;
        }
        ++next;
    }
    return static_cast<size_t>(next);
}

void check_closure_axioms(const FiniteMatrixGroup& g) {
    const auto& t = g.table();
    for (size_t a = 0; a < g.order(); ++a) {
        GroupElement inv = g.elements[a].inverse();
        int ia = g.index_of(inv);
        REQUIRE(ia >= 0);
        CHECK(t.mul(static_cast<int>(a), ia) == 0);
        for (size_t b = 0; b < g.order(); ++b) {
            int ab = g.index_of(g.elements[a] * g.elements[b]);
            REQUIRE(ab >= 0);
            CHECK(ab == t.mul(static_cast<int>(a), static_cast<int>(b)));
        }
    }
}

}  // namespace

TEST_CASE("closure examples") {
    CHECK(wreath_c2_s3().order() == 48);
    CHECK(generate_closure(std::vector<ExactMatrix>{dmat(7, 1, 2, 4)}, 3).order() == 7);
    CHECK(generate_closure(std::vector<ExactMatrix>{}).order() == 1);
    CHECK(s3().order() == 6);
    CHECK(d4().order() == 8);
    CHECK(sl23().order() == 24);
    CHECK_THROWS_AS(generate_closure(std::vector<ExactMatrix>{ExactMatrix::diag({2, CycNum(mpq_class(1, 2))})},
                                     std::nullopt, 100),
                    OrderCapExceeded);
}

TEST_CASE("closure axioms hold exhaustively for small groups") {
    for (const auto& g : {wreath_c2_s3(), s3(), d4(), sl23(), octahedral(), s4_perm()}) check_closure_axioms(g);
    // projective and antilinear elements
    ExactMatrix d = dmat(7, 1, 2, 4);
    std::vector<GroupElement> gens{GroupElement(d), GroupElement(perm3(1, 2, 0)),
                                   GroupElement(ExactMatrix::identity(3), true)};
    FiniteMatrixGroup g = generate_closure(gens, 3);
    CHECK(g.order() == 42);
    CHECK(g.has_antilinear());
    check_closure_axioms(g);
}

TEST_CASE("projective canonicalization is invariant under mu_m") {
    FiniteMatrixGroup g = generate_closure(std::vector<ExactMatrix>{dmat(9, 1, 2, 6), perm3(1, 2, 0)}, 3);
    for (const auto& e : g.elements)
        for (int k = 0; k < 3; ++k) {
            GroupElement s(e.mat * CycNum::zeta(3, k), e.antilinear);
            CHECK(projective_canonical(s, 3) == projective_canonical(e, 3));
        }
    // mu_4 acting on an entry of argument exactly pi/2
    GroupElement x(ExactMatrix::diag({CycNum::i(), 1}));
    GroupElement c = projective_canonical(x, 4);
    CHECK(c.mat(0, 0).is_one());
    CHECK(scalar_subgroup_order({GroupElement(dmat(7, 1, 2, 4)), GroupElement(perm3(1, 2, 0))}) == 1);
    CHECK(scalar_subgroup_order({GroupElement(dmat(3, 1, 1, 1))}) == 3);
}

TEST_CASE("subgroup classes") {
    CHECK(subgroup_classes(s3()).size() == 4);
    CHECK(subgroup_classes(d4()).size() == 8);
    auto w = wreath_c2_s3();
    auto cls = subgroup_classes(w.table());
    CHECK(cls.size() == 33);
    for (const auto& g : {s3(), d4(), w, sl23(), s4_perm()})
        CHECK(subgroup_classes(g.table()).size() == brute_force_class_count(g.table()));
    CHECK(subgroup_classes(s4_perm().table()).size() == 11);
    CHECK(subgroup_classes(sl23().table()).size() == 7);

    // representatives are pairwise non-conjugate and each is a subgroup
    const auto& t = w.table();
    for (size_t a = 0; a < cls.size(); ++a) {
        CHECK(t.is_subgroup(cls[a].rep));
        CHECK(t.closure(cls[a].gens) == cls[a].rep);
        for (size_t b = a + 1; b < cls.size(); ++b) {
            if (cls[a].order != cls[b].order) continue;
            bool conj = false;
            for (int x = 0; x < t.order() && !conj; ++x) conj = t.conjugate(cls[a].rep, x) == cls[b].rep;
            CHECK_FALSE(conj);
        }
    }
    CHECK_THROWS_AS(subgroup_classes(w.table(), 10), EnumerationBoundExceeded);
}

TEST_CASE("fingerprints") {
    auto fw = group_fingerprint(wreath_c2_s3());
    CHECK(fw.order == 48);
    CHECK(fw.abelian_invariants == std::vector<int>{2, 2});
    auto f4 = group_fingerprint(octahedral());
    CHECK(f4.order == 24);
    CHECK(f4.class_sizes == std::vector<int>{1, 3, 6, 6, 8});
    CHECK(f4.abelian_invariants == std::vector<int>{2});
    CHECK(f4.defining_char_norm == 1);
    auto f1 = group_fingerprint(generate_closure(std::vector<ExactMatrix>{}));
    CHECK(f1.order == 1);
    CHECK(f1.order_histogram == std::map<int, int>{{1, 1}});
    CHECK(f1.abelian_invariants.empty());
    CHECK(group_fingerprint(s4_perm()).class_sizes == f4.class_sizes);
    auto fq = group_fingerprint(sl23());
    CHECK(fq.abelian_invariants == std::vector<int>{3});
    CHECK(fq != f4);
    // C4 x C2 x C3 -> invariants 2, 3, 4 (elementary divisors of prime powers)
    auto fa = group_fingerprint(generate_closure(std::vector<ExactMatrix>{
        ExactMatrix::diag({CycNum::i(), 1, 1}), ExactMatrix::diag({1, -1, 1}), ExactMatrix::diag({1, 1, CycNum::zeta(3)})}));
    CHECK(fa.abelian_invariants == std::vector<int>{2, 3, 4});
}

TEST_CASE("isomorphism search") {
    auto a = s4_perm(), b = octahedral(), c = sl23();
    auto phi = find_isomorphism(a.table(), a.table().all(), b.table(), b.table().all());
    REQUIRE(phi);
    for (int x = 0; x < 24; ++x)
        for (int y = 0; y < 24; ++y)
            CHECK((*phi)[static_cast<size_t>(a.table().mul(x, y))] ==
                  b.table().mul((*phi)[static_cast<size_t>(x)], (*phi)[static_cast<size_t>(y)]));
    CHECK_FALSE(find_isomorphism(a.table(), a.table().all(), c.table(), c.table().all()));
    // Labels by character: the cube rotations carry the standard
    // representation of S4 twisted by the sign.
    std::vector<int> std_char, twisted, rot;
    for (const auto& e : a.elements) {
        long t = *recognize_rational_integer(e.mat.trace()).value - 1;
        long sgn = *recognize_rational_integer(e.mat.det()).value;
        std_char.push_back(static_cast<int>(t));
        twisted.push_back(static_cast<int>(t * sgn));
    }
    for (const auto& e : b.elements) rot.push_back(static_cast<int>(*recognize_rational_integer(e.mat.trace()).value));
    CHECK(find_isomorphism(a.table(), a.table().all(), b.table(), b.table().all(), &twisted, &rot));
    CHECK_FALSE(find_isomorphism(a.table(), a.table().all(), b.table(), b.table().all(), &std_char, &rot));
}

TEST_CASE("json round trip") {
    std::vector<GroupElement> gens{GroupElement(dmat(7, 1, 2, 4)), GroupElement(ExactMatrix::identity(3), true)};
    FiniteMatrixGroup g = generate_closure(gens, 3);
    g.name = "H0 x C2";
    FiniteMatrixGroup h = FiniteMatrixGroup::from_json(g.to_json());
    CHECK(h.order() == g.order());
    CHECK(h.name == g.name);
    CHECK(h.projective_scalars == 3);
    for (const auto& e : g.elements) CHECK(h.index_of(e) >= 0);
}
