#include "stg/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace stg {

namespace {

std::atomic<long> g_cap{10000};

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long fold_conductor(long n) { return (n % 4 == 2) ? n / 2 : n; }

// Reduce a coefficient vector (exponents 0..len-1) modulo x^n - 1 and Phi_n.
void reduce_mod(long n, std::vector<mpq_class>& r) {
    if (static_cast<long>(r.size()) > n) {
        for (size_t e = n; e < r.size(); ++e) {
            if (sgn(r[e]) != 0) r[e % n] += r[e];
        }
        r.resize(n);
    }
    const auto& phi = cyclotomic_polynomial(n);
    long d = static_cast<long>(phi.size()) - 1;
    for (long e = static_cast<long>(r.size()) - 1; e >= d; --e) {
        if (sgn(r[e]) == 0) continue;
        mpq_class q = r[e];
        for (long j = 0; j <= d; ++j) {
            if (phi[j] != 0) r[e - d + j] -= q * phi[j];
        }
    }
    r.resize(d, mpq_class(0));
}

// Rational matrix data for testing membership of Q(zeta_m) elements in the
// subfield Q(zeta_s) when the power-basis shortcut does not apply.
struct SubfieldData {
    long m = 0, s = 0;
    std::vector<std::vector<mpq_class>> emb;  // phi(m) x phi(s), columns = zeta_s^j
    std::vector<long> pivots;                 // phi(s) rows
    std::vector<std::vector<mpq_class>> inv;  // inverse of emb restricted to pivots
};

std::mutex g_sub_mu;
std::map<std::pair<long, long>, std::shared_ptr<const SubfieldData>> g_sub_cache;

std::shared_ptr<const SubfieldData> subfield_data(long m, long s) {
    {
        std::lock_guard<std::mutex> lk(g_sub_mu);
        auto it = g_sub_cache.find({m, s});
        if (it != g_sub_cache.end()) return it->second;
    }
    auto d = std::make_shared<SubfieldData>();
    d->m = m;
    d->s = s;
    long pm = euler_phi(m), ps = euler_phi(s);
    long step = m / s;
    d->emb.assign(pm, std::vector<mpq_class>(ps, 0));
    for (long j = 0; j < ps; ++j) {
        std::vector<mpq_class> r(m, 0);
        r[(j * step) % m] = 1;
        reduce_mod(m, r);
        for (long i = 0; i < pm; ++i) d->emb[i][j] = r[i];
    }
    // Gaussian elimination to find pivot rows and the inverse on them.
    std::vector<std::vector<mpq_class>> a = d->emb;
    std::vector<long> rows;
    // Pick rows making emb invertible.
    std::vector<std::vector<mpq_class>> basis;  // reduced rows
    std::vector<long> lead;
    for (long i = 0; i < pm && static_cast<long>(rows.size()) < ps; ++i) {
        std::vector<mpq_class> v = a[i];
        for (size_t b = 0; b < basis.size(); ++b) {
            if (sgn(v[lead[b]]) != 0) {
                mpq_class f = v[lead[b]];
                for (long k = 0; k < ps; ++k) v[k] -= f * basis[b][k];
            }
        }
        long l = -1;
        for (long k = 0; k < ps; ++k) {
            if (sgn(v[k]) != 0) { l = k; break; }
        }
        if (l < 0) continue;
        mpq_class f = v[l];
        for (long k = 0; k < ps; ++k) v[k] /= f;
        for (size_t b = 0; b < basis.size(); ++b) {
            if (sgn(basis[b][l]) != 0) {
                mpq_class g = basis[b][l];
                for (long k = 0; k < ps; ++k) basis[b][k] -= g * v[k];
            }
        }
        basis.push_back(v);
        lead.push_back(l);
        rows.push_back(i);
    }
    d->pivots = rows;
    // Invert the square matrix P = emb[pivots][*].
    long n = ps;
    std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(2 * n, 0));
    for (long r = 0; r < n; ++r) {
        for (long c = 0; c < n; ++c) aug[r][c] = d->emb[rows[r]][c];
        aug[r][n + r] = 1;
    }
    for (long c = 0; c < n; ++c) {
        long p = c;
        while (sgn(aug[p][c]) == 0) ++p;
        std::swap(aug[p], aug[c]);
        mpq_class f = aug[c][c];
        for (long k = 0; k < 2 * n; ++k) aug[c][k] /= f;
        for (long r = 0; r < n; ++r) {
            if (r == c || sgn(aug[r][c]) == 0) continue;
            mpq_class g = aug[r][c];
            for (long k = 0; k < 2 * n; ++k) aug[r][k] -= g * aug[c][k];
        }
    }
    d->inv.assign(n, std::vector<mpq_class>(n, 0));
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) d->inv[r][c] = aug[r][n + c];
    std::lock_guard<std::mutex> lk(g_sub_mu);
    g_sub_cache[{m, s}] = d;
    return d;
}

// If x (at conductor m) lies in Q(zeta_s), return its coordinates there.
std::optional<std::vector<mpq_class>> descend(long m, const std::vector<mpq_class>& x, long p) {
    long s = m / p;
    if (s % p == 0) {
        // Phi_m(x) = Phi_s(x^p): subfield elements only use exponents divisible by p.
        for (size_t e = 0; e < x.size(); ++e) {
            if (e % p != 0 && sgn(x[e]) != 0) return std::nullopt;
        }
        std::vector<mpq_class> y(euler_phi(s));
        for (size_t j = 0; j < y.size(); ++j) y[j] = x[j * p];
        if (s % 4 == 2) {
            // Q(zeta_s) = Q(zeta_{s/2}); re-express through zeta_s = -zeta_{s/2}^{(s/2+1)/2}.
            long h = s / 2;
            std::vector<mpq_class> r(h, 0);
            long k = (h + 1) / 2;
            for (size_t j = 0; j < y.size(); ++j) {
                if (sgn(y[j]) == 0) continue;
                long e = (static_cast<long>(j) * k) % h;
                if (j % 2) r[e] -= y[j];
                else r[e] += y[j];
            }
            reduce_mod(h, r);
            return r;
        }
        return y;
    }
    long target = fold_conductor(s);
    auto d = subfield_data(m, target);
    long ps = static_cast<long>(d->pivots.size());
    std::vector<mpq_class> y(ps, 0);
    for (long r = 0; r < ps; ++r)
        for (long c = 0; c < ps; ++c) {
            const mpq_class& v = x[d->pivots[c]];
            if (sgn(v) != 0 && sgn(d->inv[r][c]) != 0) y[r] += d->inv[r][c] * v;
        }
    for (size_t i = 0; i < x.size(); ++i) {
        mpq_class acc = 0;
        for (long j = 0; j < ps; ++j) {
            if (sgn(y[j]) != 0 && sgn(d->emb[i][j]) != 0) acc += d->emb[i][j] * y[j];
        }
        if (acc != x[i]) return std::nullopt;
    }
    return y;
}

int legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long r = 1, b = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

nlohmann::json mpz_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

mpz_class json_mpz(const nlohmann::json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    return mpz_class(j.get<long>());
}

}  // namespace

long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

int moebius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

const std::vector<long>& cyclotomic_polynomial(long n) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<std::vector<long>>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    std::vector<long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        const auto& q = cyclotomic_polynomial(d);
        long dq = static_cast<long>(q.size()) - 1;
        long dn = static_cast<long>(num.size()) - 1;
        std::vector<long> quo(dn - dq + 1, 0);
        for (long e = dn; e >= dq; --e) {
            long c = num[e];
            if (c == 0) continue;
            quo[e - dq] = c;
            for (long j = 0; j <= dq; ++j) num[e - dq + j] -= c * q[j];
        }
        num = quo;
    }
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<std::vector<long>>(num);
    return *slot;
}

long lcm_conductor(long a, long b) { return fold_conductor(std::lcm(a, b)); }

void CycNum::set_conductor_cap(long cap) { g_cap = cap; }
long CycNum::conductor_cap() { return g_cap; }

CycNum::CycNum() : n_(1), c_{mpq_class(0)} {}
CycNum::CycNum(long v) : n_(1), c_{mpq_class(v)} {}
CycNum::CycNum(const mpq_class& q) : n_(1), c_{q} {}

CycNum::CycNum(long n, std::vector<mpq_class> c, bool canon) : n_(n), c_(std::move(c)) {
    if (canon) canonicalize();
}

CycNum CycNum::from_coeffs(long n, std::vector<mpq_class> coeffs) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    if (n > g_cap) throw ConductorOverflow(n);
    // Accept any length; reduce modulo Phi_n.
    if (n % 4 == 2) {
        long h = n / 2, k = (h + 1) / 2;
        std::vector<mpq_class> r(h, 0);
        for (size_t j = 0; j < coeffs.size(); ++j) {
            if (sgn(coeffs[j]) == 0) continue;
            long jj = static_cast<long>(j % n);
            long e = (jj * k) % h;
            if (jj % 2) r[e] -= coeffs[j];
            else r[e] += coeffs[j];
        }
        reduce_mod(h, r);
        return CycNum(h, std::move(r), true);
    }
    reduce_mod(n, coeffs);
    return CycNum(n, std::move(coeffs), true);
}

CycNum CycNum::zeta(long n, long k) {
    if (n < 1) throw std::invalid_argument("zeta: n must be positive");
    k %= n;
    if (k < 0) k += n;
    std::vector<mpq_class> c(k + 1, 0);
    c[k] = 1;
    return from_coeffs(n, std::move(c));
}

CycNum CycNum::i() { return zeta(4, 1); }

CycNum CycNum::cos2pi(long k, long n) {
    return (zeta(n, k) + zeta(n, -k)) * CycNum(mpq_class(1, 2));
}

CycNum CycNum::sin2pi(long k, long n) {
    // (z - 1/z) / 2i = (z - 1/z) * (-i/2)
    return (zeta(n, k) - zeta(n, -k)) * (i() * CycNum(mpq_class(-1, 2)));
}

CycNum CycNum::sqrt_rational(const mpq_class& q) {
    if (sgn(q) == 0) return CycNum();
    mpz_class a = abs(q.get_num()) * q.get_den();
    mpq_class outside(1, q.get_den());
    CycNum root(1);
    mpz_class rest = a;
    for (long p = 2; rest > 1; ++p) {
        if (mpz_class(p) * p > rest) {
            // rest is prime
            if (!rest.fits_slong_p()) throw std::domain_error("sqrt_rational: prime too large");
            p = rest.get_si();
        }
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e == 0) continue;
        for (int t = 0; t < e / 2; ++t) outside *= p;
        if (e % 2 == 0) continue;
        CycNum sp;
        if (p == 2) {
            sp = zeta(8, 1) + zeta(8, 7);
        } else {
            CycNum g;
            for (long x = 1; x < p; ++x) g += CycNum(legendre(x, p)) * zeta(p, x);
            sp = (p % 4 == 1) ? g : -i() * g;
        }
        root *= sp;
    }
    CycNum r = root * CycNum(outside);
    if (sgn(q) < 0) r *= i();
    return r;
}

std::vector<mpq_class> CycNum::rebased(long m) const {
    if (m == n_) return c_;
    long step = m / n_;
    std::vector<mpq_class> r(m, 0);
    for (size_t j = 0; j < c_.size(); ++j) r[(j * step) % m] = c_[j];
    reduce_mod(m, r);
    return r;
}

std::vector<mpq_class> CycNum::coeffs_at(long m) const {
    if (m % n_ != 0 || m % 4 == 2) throw std::invalid_argument("coeffs_at: bad conductor");
    if (m > g_cap) throw ConductorOverflow(m);
    return rebased(m);
}

void CycNum::canonicalize() {
    bool changed = true;
    while (changed && n_ > 1) {
        changed = false;
        // Quick exit: everything but the constant term vanishes.
        bool rational = true;
        for (size_t e = 1; e < c_.size(); ++e) {
            if (sgn(c_[e]) != 0) { rational = false; break; }
        }
        if (rational) {
            c_.resize(1);
            n_ = 1;
            return;
        }
        for (long p : prime_factors(n_)) {
            auto y = descend(n_, c_, p);
            if (y) {
                long s = n_ / p;
                n_ = fold_conductor(s);
                c_ = std::move(*y);
                changed = true;
                break;
            }
        }
    }
}

CycNum CycNum::operator+(const CycNum& b) const {
    if (n_ == b.n_) {
        std::vector<mpq_class> r(c_.size());
        for (size_t j = 0; j < r.size(); ++j) r[j] = c_[j] + b.c_[j];
        return CycNum(n_, std::move(r), n_ > 1);
    }
    long m = lcm_conductor(n_, b.n_);
    if (m > g_cap) throw ConductorOverflow(m);
    auto x = rebased(m), y = b.rebased(m);
    for (size_t j = 0; j < x.size(); ++j) x[j] += y[j];
    return CycNum(m, std::move(x), true);
}

CycNum CycNum::operator-() const {
    std::vector<mpq_class> r(c_.size());
    for (size_t j = 0; j < r.size(); ++j) r[j] = -c_[j];
    return CycNum(n_, std::move(r), false);
}

CycNum CycNum::operator-(const CycNum& b) const { return *this + (-b); }

CycNum CycNum::operator*(const CycNum& b) const {
    if (n_ == 1) {
        if (sgn(c_[0]) == 0) return CycNum();
        std::vector<mpq_class> r(b.c_.size());
        for (size_t j = 0; j < r.size(); ++j) r[j] = c_[0] * b.c_[j];
        return CycNum(b.n_, std::move(r), false);
    }
    if (b.n_ == 1) return b * *this;
    long m = lcm_conductor(n_, b.n_);
    if (m > g_cap) throw ConductorOverflow(m);
    auto x = rebased(m), y = b.rebased(m);
    std::vector<mpq_class> r(x.size() + y.size() - 1, 0);
    for (size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (size_t c = 0; c < y.size(); ++c) {
            if (sgn(y[c]) == 0) continue;
            r[a + c] += x[a] * y[c];
        }
    }
    reduce_mod(m, r);
    return CycNum(m, std::move(r), true);
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (n_ == 1) return CycNum(mpq_class(1) / c_[0]);
    long d = static_cast<long>(c_.size());
    // Columns: x * zeta^j. Solve M y = e_0.
    std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(d + 1, 0));
    for (long j = 0; j < d; ++j) {
        std::vector<mpq_class> r(d + j, 0);
        for (long t = 0; t < d; ++t) r[t + j] = c_[t];
        reduce_mod(n_, r);
        for (long t = 0; t < d; ++t) a[t][j] = r[t];
    }
    a[0][d] = 1;
    for (long c = 0; c < d; ++c) {
        long p = c;
        while (p < d && sgn(a[p][c]) == 0) ++p;
        if (p == d) throw DivisionByZero();
        std::swap(a[p], a[c]);
        mpq_class f = a[c][c];
        for (long k = c; k <= d; ++k) a[c][k] /= f;
        for (long r = 0; r < d; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            mpq_class g = a[r][c];
            for (long k = c; k <= d; ++k) a[r][k] -= g * a[c][k];
        }
    }
    std::vector<mpq_class> y(d);
    for (long r = 0; r < d; ++r) y[r] = a[r][d];
    return CycNum(n_, std::move(y), true);
}

CycNum CycNum::operator/(const CycNum& b) const { return *this * b.inverse(); }

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

CycNum CycNum::galois(long a) const {
    if (n_ == 1) return *this;
    a %= n_;
    if (a < 0) a += n_;
    if (std::gcd(a, n_) != 1) throw std::invalid_argument("galois: exponent not a unit");
    std::vector<mpq_class> r(n_, 0);
    for (size_t j = 0; j < c_.size(); ++j) {
        if (sgn(c_[j]) != 0) r[(j * a) % n_] += c_[j];
    }
    reduce_mod(n_, r);
    return CycNum(n_, std::move(r), false);
}

CycNum CycNum::conj() const { return galois(n_ - 1); }

CycNum CycNum::re() const { return (*this + conj()) * CycNum(mpq_class(1, 2)); }

CycNum CycNum::im() const { return (*this - conj()) / (CycNum(2) * i()); }

bool CycNum::is_zero() const { return n_ == 1 && sgn(c_[0]) == 0; }
bool CycNum::is_one() const { return n_ == 1 && c_[0] == 1; }

mpq_class CycNum::rational_value() const {
    if (n_ != 1) throw std::logic_error("not rational");
    return c_[0];
}

std::optional<std::pair<long, long>> CycNum::root_of_unity() const {
    if (is_zero()) return std::nullopt;
    auto z = to_complex();
    if (std::abs(std::abs(z) - 1.0) > 1e-9) return std::nullopt;
    long l = (n_ % 2) ? 2 * n_ : n_;
    double ang = std::arg(z);
    long k = std::lround(ang * static_cast<double>(l) / (2.0 * M_PI));
    k %= l;
    if (k < 0) k += l;
    if (zeta(l, k) != *this) return std::nullopt;
    long g = std::gcd(k, l);
    if (k == 0) return std::make_pair(1L, 0L);
    return std::make_pair(l / g, k / g);
}

std::complex<double> CycNum::to_complex() const {
    long double re = 0, im = 0;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (sgn(c_[j]) == 0) continue;
        long double v = c_[j].get_d();
        long double t = 2.0L * M_PIl * static_cast<long double>(j) / static_cast<long double>(n_);
        re += v * std::cos(t);
        im += v * std::sin(t);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycNum::str() const {
    if (n_ == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (sgn(c_[j]) == 0) continue;
        mpq_class v = c_[j];
        if (!first) os << (sgn(v) > 0 ? " + " : " - ");
        else if (sgn(v) < 0) os << "-";
        mpq_class av = abs(v);
        if (j == 0) {
            os << av.get_str();
        } else {
            if (av != 1) os << av.get_str() << "*";
            os << "z" << n_;
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os.str();
}

std::string CycNum::key() const {
    std::string s = std::to_string(n_);
    for (const auto& v : c_) {
        s += ':';
        s += v.get_str();
    }
    return s;
}

size_t CycNum::hash() const {
    size_t h = static_cast<size_t>(n_) * 0x9E3779B97F4A7C15ULL;
    for (const auto& v : c_) {
        size_t a = mpz_get_ui(v.get_num_mpz_t()) ^ (mpz_sgn(v.get_num_mpz_t()) < 0 ? 0x5555 : 0);
        size_t b = mpz_get_ui(v.get_den_mpz_t());
        h ^= a + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= b + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    }
    return h;
}

nlohmann::json CycNum::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& v : c_) cs.push_back({mpz_json(v.get_num()), mpz_json(v.get_den())});
    return {{"order", n_}, {"coeffs", cs}};
}

CycNum CycNum::from_json(const nlohmann::json& j) {
    long n = j.at("order").get<long>();
    std::vector<mpq_class> cs;
    for (const auto& e : j.at("coeffs")) {
        mpq_class q(json_mpz(e.at(0)), json_mpz(e.at(1)));
        q.canonicalize();
        cs.push_back(q);
    }
    return from_coeffs(n, std::move(cs));
}

CycNum operator+(long a, const CycNum& b) { return CycNum(a) + b; }
CycNum operator-(long a, const CycNum& b) { return CycNum(a) - b; }
CycNum operator*(long a, const CycNum& b) { return CycNum(a) * b; }

IntegerRecognition recognize_rational_integer(const CycNum& a) {
    IntegerRecognition r;
    if (!a.is_rational()) return r;
    mpq_class q = a.rational_value();
    if (q.get_den() != 1) return r;
    r.is_integer = true;
    if (q.get_num().fits_slong_p()) r.value = q.get_num().get_si();
    return r;
}

}  // namespace stg
