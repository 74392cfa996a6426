#include <doctest.h>

#include <cmath>

#include "stg/haar.hpp"

using namespace stg;

namespace {

NumMatrix jform() { return to_numeric(symplectic_form(6)); }

bool within(const EmpiricalAverage& a, double expected, double sigmas = 3.0) {
    return std::abs(a.mean - expected) <= sigmas * a.std_error + 1e-9 && std::abs(a.mean_imag) <= sigmas * a.std_error_imag + 1e-9;
}

CharacterSpec a1_fourth() { return {"a1^4", {{1, 4, 0, 0}}}; }

}  // namespace

TEST_CASE("samples lie in USp(6) and in the component") {
    const NumMatrix j = jform();
    for (const auto& c : component_catalog()) {
        CAPTURE(c.id);
        SampleConfig cfg;
        cfg.n_samples = 200;
        for (const auto& m : haar_sample(c, cfg)) {
            CHECK((m.transpose() * j * m - j).norm() <= 1e-10);
            CHECK((m.adjoint() * m - NumMatrix::Identity()).norm() <= 1e-10);
        }
    }
}

TEST_CASE("streams are deterministic") {
    SampleConfig cfg;
    cfg.seed = 42;
    cfg.n_samples = 5000;
    auto a = haar_sample(component("A"), cfg), b = haar_sample(component("A"), cfg);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (size_t i = 0; i < a.size(); ++i) same = same && a[i] == b[i];
    CHECK(same);
    cfg.seed = 43;
    auto c = haar_sample(component("A"), cfg);
    CHECK(c[0] != a[0]);
    // averages do not depend on the worker layout: chunked and serial agree
    cfg.seed = 42;
    cfg.n_samples = 9000;
    auto e = empirical_average(component("A"), CharacterSpec::a1_squared(), cfg);
    auto s = haar_sample(component("A"), cfg);
    double sum = 0;
    for (const auto& m : s) sum += evaluate_character(CharacterSpec::a1_squared(), m).real();
    CHECK(std::abs(e.mean - sum / 9000.0) < 1e-9);
}

TEST_CASE("elementary traces match a direct minor expansion") {
    SampleConfig cfg;
    cfg.n_samples = 3;
    for (const auto& m : haar_sample(component("A"), cfg)) {
        std::complex<double> e2 = 0;
        for (int i = 0; i < 6; ++i)
            for (int k = i + 1; k < 6; ++k) e2 += m(i, i) * m(k, k) - m(i, k) * m(k, i);
        auto e = elementary_traces(m);
        CHECK(std::abs(e[1] - e2) < 1e-10);
        // e3 equals conj(e3) times det on USp(6): the characteristic polynomial is palindromic
        CHECK(std::abs(e[2] - std::conj(e[2])) < 1e-9);
    }
}

TEST_CASE("Weyl-integration moments") {
    SampleConfig cfg;
    cfg.seed = 11;
    cfg.n_samples = 40000;
    // standard representation of USp(6) is irreducible: E[a1^2] = 1, E[a1^4] = 3
    CHECK(within(empirical_average(component("A"), CharacterSpec::a1_squared(), cfg), 1.0));
    CHECK(within(empirical_average(component("A"), a1_fourth(), cfg), 3.0));
    CHECK(within(empirical_average(component("A"), CharacterSpec::a1(), cfg), 0.0));
    // SU(2)_3: 3 tr g has mean 0; Lambda^2 averages to 6
    CHECK(within(empirical_average(component("M"), CharacterSpec::a1(), cfg), 0.0));
    CHECK(within(empirical_average(component("M"), CharacterSpec::lambda2(), cfg), 6.0));
    // C^3 + dual for U(3) and SU(3): two irreducible constituents
    CHECK(within(empirical_average(component("U3"), CharacterSpec::a1_squared(), cfg), 2.0));
    CHECK(within(empirical_average(component("SU3"), CharacterSpec::a1_squared(), cfg), 2.0));
    // SO(3) acting on R^3 (x) C^2: E[tr^2] = 4 (commutant dimension)
    CHECK(within(empirical_average(component("SO3"), CharacterSpec::a1_squared(), cfg), 4.0));
    // USp(4) x SU(2): commutant of dimension 2
    CHECK(within(empirical_average(component("C"), CharacterSpec::a1_squared(), cfg), 2.0));
    CHECK(within(empirical_average(component("D"), CharacterSpec::a1_squared(), cfg), 3.0));
}

TEST_CASE("U(1)_3 coset of D(1/7,2/7,4/7)") {
    CycNum z = CycNum::zeta(7);
    SampleConfig cfg;
    cfg.n_samples = 20000;
    cfg.coset_rep = unitary_embedding(ExactMatrix::diag({z, z.pow(2), z.pow(4)}));
    CHECK(within(empirical_average(component("N"), CharacterSpec::lambda2(), cfg), 2.0));
}

TEST_CASE("MC agrees with exact averages") {
    CycNum z = CycNum::zeta(12);
    std::vector<std::pair<const ConnectedComponentDescriptor*, ExactMatrix>> cases = {
        {&component("M"), unitary_embedding(ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}))},
        {&component("H"), symplectic_form(6)},
        {&component("N"), unitary_embedding(ExactMatrix::diag({z, z.pow(5), z.pow(6)}))},
        {&component("K"), plane_block({0, 1, 2}, 0, 1, -1, 0)},
        {&component("F"), unitary_embedding(ExactMatrix::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}))},
    };
    for (const auto& [c, a] : cases)
        for (const auto& chi : default_character_family()) {
            CAPTURE(c->id);
            CAPTURE(chi.name);
            CycNum exact = coset_character_average(*c, a, chi);
            auto v = exact.to_complex();
            SampleConfig cfg;
            cfg.seed = 5;
            cfg.n_samples = 20000;
            cfg.coset_rep = a;
            auto e = empirical_average(*c, chi, cfg);
            CHECK(std::abs(e.mean - v.real()) <= 4 * e.std_error + 1e-9);
            CHECK(std::abs(e.mean_imag - v.imag()) <= 4 * e.std_error_imag + 1e-9);
        }
}

TEST_CASE("averages are invariant under conjugating the coset representative") {
    const auto& m = component("M");
    ExactMatrix a = unitary_embedding(ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}));
    ExactMatrix g = unitary_embedding(ExactMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
    SampleConfig c1, c2;
    c1.n_samples = c2.n_samples = 20000;
    c1.seed = 1;
    c2.seed = 2;
    c1.coset_rep = a;
    c2.coset_rep = g * a * g.inverse();
    for (const auto& chi : default_character_family()) {
        auto x = empirical_average(m, chi, c1), y = empirical_average(m, chi, c2);
        CHECK(std::abs(x.mean - y.mean) <= 4 * std::hypot(x.std_error, y.std_error) + 1e-9);
    }
}

TEST_CASE("MC agreement holds across 100 seeds") {
    // fast subset: two cosets, two characters, small sample counts
    std::vector<std::pair<const ConnectedComponentDescriptor*, ExactMatrix>> cases = {
        {&component("M"), unitary_embedding(ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}))},
        {&component("H"), symplectic_form(6)},
    };
    std::vector<CharacterSpec> chars = {CharacterSpec::a1_squared(), CharacterSpec::lambda2()};
    for (const auto& [c, a] : cases)
        for (const auto& chi : chars) {
            CAPTURE(c->id);
            CAPTURE(chi.name);
            const double exact = coset_character_average(*c, a, chi).to_complex().real();
            int within = 0;
            for (uint64_t seed = 1000; seed < 1100; ++seed) {
                SampleConfig cfg;
                cfg.seed = seed;
                cfg.n_samples = 4000;
                cfg.coset_rep = a;
                auto e = empirical_average(*c, chi, cfg);
                within += std::abs(e.mean - exact) <= 3 * e.std_error + 1e-9;
            }
            CHECK(within >= 99);
        }
}
