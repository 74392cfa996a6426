#include <doctest.h>

#include <complex>
#include <random>

#include "stg/cyclotomic.hpp"

using stg::CycNum;

namespace {

// Independent Moebius function by trial division.
int mu_oracle(int n) {
    int k = 0;
    for (int p = 2; p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 1) return 0;
        ++k;
    }
    return (k % 2) ? -1 : 1;
}

int gcd_i(int a, int b) { return b == 0 ? a : gcd_i(b, a % b); }

CycNum random_cyc(std::mt19937& rng) {
    static const int conductors[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24};
    int n = conductors[rng() % 12];
    CycNum x;
    for (int t = 0; t < 3; ++t) {
        int k = static_cast<int>(rng() % n);
        mpq_class c(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
        c.canonicalize();
        x += CycNum(c) * CycNum::zeta(n, k);
    }
    return x;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_CASE("cyclotomic: basic identities") {
    CHECK((CycNum::zeta(3) + CycNum::zeta(3, 2) + CycNum(1)).is_zero());
    CHECK(CycNum::zeta(8) * CycNum::zeta(8) == CycNum::zeta(4));
    CycNum a = CycNum::zeta(7, 1) + CycNum::zeta(7, 2) + CycNum::zeta(7, 4);
    CycNum b = CycNum::zeta(7, 3) + CycNum::zeta(7, 5) + CycNum::zeta(7, 6);
    CHECK(a * b == CycNum(2));
    CHECK(a * a.conj() == CycNum(2));
    CHECK(CycNum::zeta(5).conj() == CycNum::zeta(5, 4));
    CHECK(CycNum(mpq_class(3, 2)).conj() == CycNum(mpq_class(3, 2)));
    CHECK(CycNum::zeta(6) == -CycNum::zeta(3, 2));
    CHECK(CycNum::zeta(2) == CycNum(-1));
}

TEST_CASE("cyclotomic: minimal conductor") {
    CHECK((CycNum::zeta(12, 3)).order() == 4);
    CHECK((CycNum::zeta(12, 4)).order() == 3);
    CycNum s5 = CycNum::sqrt_rational(5);
    CHECK(s5.order() == 5);
    CHECK(s5 * s5 == CycNum(5));
    CycNum s2 = CycNum::sqrt_rational(2);
    CHECK(s2.order() == 8);
    CHECK(s2 * s2 == CycNum(2));
    CycNum s3 = CycNum::sqrt_rational(3);
    CHECK(s3.order() == 12);
    CHECK(close(s3.to_complex(), std::sqrt(3.0)));
    CycNum sm7 = CycNum::sqrt_rational(-7);
    CHECK(sm7.order() == 7);
    CHECK(close(sm7.to_complex(), std::complex<double>(0, std::sqrt(7.0))));
    CHECK(close(CycNum::sqrt_rational(mpq_class(9, 8)).to_complex(), std::sqrt(9.0 / 8.0)));
}

TEST_CASE("cyclotomic: sum of primitive roots equals Moebius for n <= 200") {
    for (int n = 1; n <= 200; ++n) {
        CycNum s;
        for (int k = 0; k < n; ++k) {
            if (gcd_i(k, n) == 1) s += CycNum::zeta(n, k);
        }
        if (n == 1) s = CycNum(1);
        INFO("n = " << n);
        REQUIRE(s == CycNum(mu_oracle(n)));
    }
}

TEST_CASE("cyclotomic: round trip through multiple conductors") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        CycNum x = random_cyc(rng);
        for (long m : {x.order() * 3, x.order() * 4, x.order() * 5}) {
            long mm = (m % 4 == 2) ? m * 2 : m;
            CycNum y = CycNum::from_coeffs(mm, x.coeffs_at(mm));
            REQUIRE(y == x);
            REQUIRE(y.key() == x.key());
        }
    }
}

TEST_CASE("cyclotomic: field axioms against a floating-point oracle") {
    std::mt19937 rng(11);
    for (int t = 0; t < 300; ++t) {
        CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        auto fa = a.to_complex(), fb = b.to_complex(), fc = c.to_complex();
        CHECK(close((a + b).to_complex(), fa + fb));
        CHECK(close((a * b).to_complex(), fa * fb));
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(a.conj().conj() == a);
        CycNum n = a * a.conj();
        CHECK(n.conj() == n);
        if (!b.is_zero()) {
            CHECK(close((a / b).to_complex(), fa / fb));
            CHECK(b * b.inverse() == CycNum(1));
        }
        auto r = stg::recognize_rational_integer(n);
        if (r.is_integer) CHECK(std::abs(double(*r.value) - std::norm(fa)) < 1e-9);
    }
}

TEST_CASE("cyclotomic: recognize_rational_integer") {
    auto r = stg::recognize_rational_integer(CycNum::zeta(3) + CycNum::zeta(3, 2));
    CHECK(r.is_integer);
    CHECK(*r.value == -1);
    auto g = stg::recognize_rational_integer(CycNum(1) + CycNum::zeta(5) + CycNum::zeta(5, 4));
    CHECK_FALSE(g.is_integer);
    CHECK_FALSE(g.value.has_value());
    auto z = stg::recognize_rational_integer(CycNum());
    CHECK(z.is_integer);
    CHECK(*z.value == 0);
    CHECK_FALSE(stg::recognize_rational_integer(CycNum(mpq_class(1, 2))).is_integer);
}

TEST_CASE("cyclotomic: errors") {
    CHECK_THROWS_AS(CycNum(1) / CycNum(0), stg::DivisionByZero);
    long cap = CycNum::conductor_cap();
    CycNum::set_conductor_cap(100);
    CHECK_THROWS_AS(CycNum::zeta(7) * CycNum::zeta(101), stg::ConductorOverflow);
    CycNum::set_conductor_cap(cap);
}

TEST_CASE("cyclotomic: roots of unity and json") {
    auto r = (CycNum::zeta(12, 5) * CycNum(-1)).root_of_unity();
    REQUIRE(r.has_value());
    CHECK(CycNum::zeta(r->first, r->second) == -CycNum::zeta(12, 5));
    CHECK_FALSE((CycNum(1) + CycNum::zeta(5)).root_of_unity().has_value());
    CycNum x = CycNum(mpq_class(3, 7)) * CycNum::zeta(20, 3) - CycNum::zeta(5);
    CHECK(CycNum::from_json(x.to_json()) == x);
    nlohmann::json j = {{"order", 6}, {"coeffs", {{0, 1}, {1, 1}}}};
    CHECK(CycNum::from_json(j) == CycNum::zeta(6));
}
