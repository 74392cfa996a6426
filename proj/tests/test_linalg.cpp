#include <doctest.h>

#include <Eigen/Dense>

#include <map>
#include <random>

#include "stg/matrix.hpp"

using namespace stg;
using CM = Eigen::MatrixXcd;

namespace {

CM numeric(const ExactMatrix& m) {
    CM out(m.dim(), m.dim());
    auto v = m.to_complex();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(i, j) = v[static_cast<size_t>(i * m.dim() + j)];
    return out;
}

// Oracle: enumerate a finite matrix group numerically and return
// (1/|G|) sum |tr g|^2, which is the commutant dimension by Schur.
double character_norm(const std::vector<ExactMatrix>& gens, size_t cap = 20000) {
    std::vector<CM> g;
    for (const auto& x : gens) g.push_back(numeric(x));
    const int n = gens.front().dim();
    auto key = [](const CM& m) {
        std::vector<long long> k;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                k.push_back(std::llround(m(i, j).real() * 1e6));
                k.push_back(std::llround(m(i, j).imag() * 1e6));
            }
        return k;
    };
    std::map<std::vector<long long>, size_t> seen;
    std::vector<CM> elts{CM::Identity(n, n)};
    seen[key(elts[0])] = 0;
    for (size_t q = 0; q < elts.size(); ++q)
        for (const auto& s : g) {
            CM y = elts[q] * s;
            auto k = key(y);
            if (seen.count(k)) continue;
            seen[k] = elts.size();
            elts.push_back(y);
            REQUIRE(elts.size() < cap);
        }
    double sum = 0;
    for (const auto& e : elts) sum += std::norm(e.trace());
    return sum / static_cast<double>(elts.size());
}

// Oracle: numeric Lie closure with SVD rank over R.
int numeric_lie_closure(const std::vector<ExactMatrix>& seeds, const std::vector<ExactMatrix>& conj) {
    const int n = seeds.front().dim();
    std::vector<CM> basis, gs, gi;
    for (const auto& c : conj) {
        gs.push_back(numeric(c));
        gi.push_back(gs.back().inverse());
    }
    auto flat = [n](const CM& m) {
        Eigen::VectorXd v(2 * n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                v(2 * (i * n + j)) = m(i, j).real();
                v(2 * (i * n + j) + 1) = m(i, j).imag();
            }
        return v;
    };
    auto rank_of = [&](const std::vector<CM>& ms) {
        if (ms.empty()) return 0;
        Eigen::MatrixXd a(2 * n * n, static_cast<int>(ms.size()));
        for (size_t k = 0; k < ms.size(); ++k) a.col(static_cast<int>(k)) = flat(ms[k]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        int r = 0;
        for (int k = 0; k < svd.singularValues().size(); ++k) r += svd.singularValues()(k) > 1e-8;
        return r;
    };
    std::vector<CM> todo;
    for (const auto& s : seeds) todo.push_back(numeric(s));
    while (!todo.empty()) {
        CM x = todo.back();
        todo.pop_back();
        auto trial = basis;
        trial.push_back(x);
        if (rank_of(trial) == static_cast<int>(basis.size())) continue;
        for (size_t k = 0; k < gs.size(); ++k) todo.push_back(gs[k] * x * gi[k]);
        for (const auto& b : basis) todo.push_back(x * b - b * x);
        basis.push_back(x);
    }
    return static_cast<int>(basis.size());
}

ExactMatrix embed_u3(const ExactMatrix& a) { return ExactMatrix::block_diag(a, a.conj()); }

// F21 = <diag(z, z^2, z^4), cyclic permutation>, z = zeta_7: irreducible on C^3
// with 3 and its dual inequivalent.
std::vector<ExactMatrix> f21_gens() {
    CycNum z = CycNum::zeta(7);
    ExactMatrix d = ExactMatrix::diag({z, z.pow(2), z.pow(4)});
    ExactMatrix p(3);
    p(0, 1) = 1;
    p(1, 2) = 1;
    p(2, 0) = 1;
    return {d, p};
}

ExactMatrix fourier3() {
    CycNum w = CycNum::zeta(3);
    CycNum s = CycNum(1) / CycNum::sqrt_rational(3);
    ExactMatrix f(3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) f(j, k) = w.pow(j * k) * s;
    return f;
}

ExactMatrix diag_i(const std::vector<int>& e) {
    std::vector<CycNum> d;
    for (int x : e) d.push_back(CycNum::i() * CycNum(static_cast<long>(x)));
    return ExactMatrix::diag(d);
}

// Q8 acting on plane k of C^6 (basis e1 e2 e3 f1 f2 f3).
ExactMatrix on_plane(int k, const ExactMatrix& g) {
    ExactMatrix m = ExactMatrix::identity(6);
    int idx[2] = {k, k + 3};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m(idx[a], idx[b]) = g(a, b);
    return m;
}

ExactMatrix plane_perm(const std::vector<int>& p) {
    ExactMatrix m(6);
    for (int k = 0; k < 3; ++k) {
        m(p[static_cast<size_t>(k)], k) = 1;
        m(p[static_cast<size_t>(k)] + 3, k + 3) = 1;
    }
    return m;
}

}  // namespace

TEST_CASE("usp membership") {
    ExactMatrix j = symplectic_form(6);
    CHECK(check_usp_membership(j));
    CycNum z = CycNum::zeta(5);
    CHECK(check_usp_membership(ExactMatrix::diag({z, z, z, z.inverse(), z.inverse(), z.inverse()})));
    CHECK_FALSE(check_usp_membership(
        ExactMatrix::diag({2, 1, 1, CycNum(mpq_class(1, 2)), 1, 1})));
    CHECK_THROWS_AS(check_usp_membership(ExactMatrix::identity(4)), DimensionMismatch);
    // J^2 = -I
    CHECK(j * j == -ExactMatrix::identity(6));
}

TEST_CASE("usp elements have det 1 and palindromic characteristic polynomial") {
    std::vector<ExactMatrix> samples = {symplectic_form(6), embed_u3(fourier3()), embed_u3(f21_gens()[0]),
                                        plane_perm({1, 2, 0}) * on_plane(0, symplectic_form(2))};
    for (const auto& m : samples) {
        REQUIRE(check_usp_membership(m));
        CHECK(m.det().is_one());
        auto c = m.charpoly();
        REQUIRE(c.size() == 7);
        for (size_t k = 0; k <= 6; ++k) CHECK(c[k] == c[6 - k]);
    }
}

TEST_CASE("matrix arithmetic against floating point") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3), e(0, 11);
    auto rnd = [&]() {
        ExactMatrix m(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = CycNum(static_cast<long>(d(rng))) * CycNum::zeta(12, e(rng));
        return m;
    };
    for (int t = 0; t < 20; ++t) {
        ExactMatrix a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).trace() == (b * a).trace());
        CM na = numeric(a), nb = numeric(b);
        CHECK(std::abs((na * nb).determinant() - (a * b).det().to_complex()) < 1e-8);
        if (!a.det().is_zero()) {
            CHECK((a * a.inverse()).is_identity());
            // charpoly evaluated at the matrix vanishes (Cayley-Hamilton)
            auto cp = a.charpoly();
            ExactMatrix s(3), p = ExactMatrix::identity(3);
            for (auto& coef : cp) {
                s = s + p * coef;
                p = p * a;
            }
            CHECK(s.is_zero());
        }
    }
}

TEST_CASE("commutant dimensions match the character-norm oracle") {
    // SU(3) image A -> diag(A, conj A)
    std::vector<ExactMatrix> su3;
    for (const auto& g : f21_gens()) su3.push_back(embed_u3(g));
    auto c = commutant_basis(su3);
    CHECK(c.dimension() == 2);
    CHECK(c.closed_under_multiplication);
    CHECK(std::abs(character_norm(su3) - 2.0) < 1e-9);

    // SO(3): octahedral rotations, real, embedded as diag(R, R)
    ExactMatrix r1(3), r2(3);
    r1(0, 1) = -1;
    r1(1, 0) = 1;
    r1(2, 2) = 1;
    r2(0, 1) = 1;
    r2(1, 2) = 1;
    r2(2, 0) = 1;
    std::vector<ExactMatrix> so3 = {embed_u3(r1), embed_u3(r2)};
    auto cs = commutant_basis(so3);
    CHECK(cs.dimension() == 4);
    CHECK(std::abs(character_norm(so3) - 4.0) < 1e-9);

    // Q8 wreath S3 inside USp(6): irreducible
    ExactMatrix qi = ExactMatrix::diag({CycNum::i(), -CycNum::i()});
    ExactMatrix qj = symplectic_form(2);
    std::vector<ExactMatrix> usp = {on_plane(0, qi), on_plane(0, qj), plane_perm({1, 2, 0}), plane_perm({1, 0, 2})};
    for (const auto& g : usp) REQUIRE(check_usp_membership(g));
    CHECK(commutant_basis(usp).dimension() == 1);
    CHECK(std::abs(character_norm(usp) - 1.0) < 1e-9);
}

TEST_CASE("commutant dimension is conjugation invariant") {
    std::vector<ExactMatrix> su3;
    for (const auto& g : f21_gens()) su3.push_back(embed_u3(g));
    ExactMatrix u = embed_u3(fourier3()) * plane_perm({1, 0, 2});
    REQUIRE(u.is_unitary());
    std::vector<ExactMatrix> conj;
    for (const auto& g : su3) conj.push_back(u * g * u.adjoint());
    CHECK(commutant_basis(conj).dimension() == commutant_basis(su3).dimension());
}

TEST_CASE("lie closure") {
    CHECK(lie_closure({diag_i({1, -1})}, {}) == 1);

    std::vector<ExactMatrix> torus;
    for (auto s : std::vector<std::vector<int>>{{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}})
        torus.push_back(diag_i({s[0], s[1], s[2], -s[0], -s[1], -s[2]}));
    CHECK(lie_closure(torus, {}) == 3);
    CHECK(numeric_lie_closure(torus, {}) == 3);

    // U(3): the non-central Hodge directions plus a non-monomial conjugator.
    std::vector<ExactMatrix> conj;
    for (const auto& g : f21_gens()) conj.push_back(embed_u3(g));
    conj.push_back(embed_u3(fourier3()));
    std::vector<ExactMatrix> seeds = {diag_i({1, 1, 1, -1, -1, -1}), diag_i({1, 1, -1, -1, -1, 1})};
    CHECK(lie_closure(seeds, conj) == 9);
    CHECK(numeric_lie_closure(seeds, conj) == 9);

    // A central seed alone has a one-point adjoint orbit.
    CHECK(lie_closure({diag_i({1, 1, 1, -1, -1, -1})}, conj) == 1);

    // monotone in the seed set
    CHECK(lie_closure({seeds[1]}, conj) <= lie_closure(seeds, conj));

    CHECK_THROWS_AS(lie_closure({ExactMatrix::identity(2)}, {}), NotAntiHermitian);
}

TEST_CASE("nullspace and json") {
    std::vector<CycVector> rows = {{1, 2, 3}, {2, 4, 6}};
    auto ns = nullspace(rows, 3);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK((v[0] + 2 * v[1] + 3 * v[2]).is_zero());
    CHECK(matrix_rank(rows, 3) == 1);
    ExactMatrix f = fourier3();
    CHECK(ExactMatrix::from_json(f.to_json()) == f);
}
