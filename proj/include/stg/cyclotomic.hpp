#pragma once
// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycNum is stored in the power basis of Q[x]/Phi_N(x) at the smallest
// conductor N containing it. N is never 2 mod 4; the rationals live at N = 1.

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace stg {

struct ConductorOverflow : std::runtime_error {
    explicit ConductorOverflow(long n)
        : std::runtime_error("conductor " + std::to_string(n) + " exceeds cap") {}
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in cyclotomic field") {}
};

class CycNum {
public:
    CycNum();
    CycNum(long v);  // NOLINT(google-explicit-constructor)
    CycNum(const mpq_class& q);  // NOLINT(google-explicit-constructor)

    // zeta_n^k. Any n >= 1 is accepted (n = 2 mod 4 is folded down).
    static CycNum zeta(long n, long k = 1);
    static CycNum i();
    // Build from power-basis coordinates at conductor n (length phi(n)),
    // then canonicalize.
    static CycNum from_coeffs(long n, std::vector<mpq_class> coeffs);
    // sqrt of a rational number (i*sqrt(-q) for q < 0), as a cyclotomic.
    static CycNum sqrt_rational(const mpq_class& q);
    // (zeta_n^k + zeta_n^-k) / 2
    static CycNum cos2pi(long k, long n);
    static CycNum sin2pi(long k, long n);

    long order() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    // Power-basis coordinates after rebasing to a multiple m of order().
    std::vector<mpq_class> coeffs_at(long m) const;

    CycNum operator+(const CycNum& b) const;
    CycNum operator-(const CycNum& b) const;
    CycNum operator*(const CycNum& b) const;
    CycNum operator/(const CycNum& b) const;
    CycNum operator-() const;
    CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
    CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
    CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
    CycNum& operator/=(const CycNum& b) { return *this = *this / b; }
    bool operator==(const CycNum& b) const { return n_ == b.n_ && c_ == b.c_; }
    bool operator!=(const CycNum& b) const { return !(*this == b); }

    CycNum conj() const;
    // Galois automorphism zeta -> zeta^a, gcd(a, order) = 1.
    CycNum galois(long a) const;
    CycNum inverse() const;
    CycNum pow(long e) const;
    CycNum re() const;  // (x + conj x)/2
    CycNum im() const;  // (x - conj x)/(2i)
    CycNum norm2() const { return *this * conj(); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return n_ == 1; }
    bool is_real() const { return *this == conj(); }
    mpq_class rational_value() const;  // requires is_rational()

    // x = zeta_n^k with gcd(k, n) = 1 (n = 1 for x = 1).
    std::optional<std::pair<long, long>> root_of_unity() const;

    std::complex<double> to_complex() const;
    std::string str() const;
    // Canonical string usable as a hash key.
    std::string key() const;
    size_t hash() const;

    nlohmann::json to_json() const;
    static CycNum from_json(const nlohmann::json& j);

    static void set_conductor_cap(long cap);
    static long conductor_cap();

private:
    long n_;
    std::vector<mpq_class> c_;

    CycNum(long n, std::vector<mpq_class> c, bool canonicalize);
    void canonicalize();
    std::vector<mpq_class> rebased(long m) const;
};

CycNum operator+(long a, const CycNum& b);
CycNum operator-(long a, const CycNum& b);
CycNum operator*(long a, const CycNum& b);

struct IntegerRecognition {
    bool is_integer = false;
    std::optional<long long> value;
};
IntegerRecognition recognize_rational_integer(const CycNum& a);

long euler_phi(long n);
int moebius(long n);
// Coefficients of Phi_n, constant term first.
const std::vector<long>& cyclotomic_polynomial(long n);
long lcm_conductor(long a, long b);

}  // namespace stg

template <>
struct std::hash<stg::CycNum> {
    size_t operator()(const stg::CycNum& x) const { return x.hash(); }
};
