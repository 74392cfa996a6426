#include "stg/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace stg {

namespace {

constexpr long kChunk = 4096;
using cd = std::complex<double>;

std::vector<int> coords_of(const std::vector<int>& planes) {
    std::vector<int> idx;
    for (int p : planes) idx.push_back(p);
    for (int p : planes) idx.push_back(p + 3);
    return idx;
}

using Vec = std::vector<cd>;

void orthonormalize(Vec& v, const std::vector<Vec>& basis) {
    for (const auto& b : basis) {
        cd dot = 0;
        for (size_t i = 0; i < v.size(); ++i) dot += std::conj(b[i]) * v[i];
        for (size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
    }
    double n = 0;
    for (const auto& x : v) n += std::norm(x);
    n = std::sqrt(n);
    for (auto& x : v) x /= n;
}

}  // namespace

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

NumMatrix to_numeric(const ExactMatrix& m) {
    if (m.dim() != 6) throw DimensionMismatch("to_numeric expects 6x6");
    NumMatrix r;
    auto c = m.to_complex();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r(i, j) = c[static_cast<size_t>(i * 6 + j)];
    return r;
}

HaarSampler::HaarSampler(const ConnectedComponentDescriptor& c, uint64_t seed, uint64_t stream)
    : c_(&c), rng_(splitmix64(seed ^ splitmix64(stream + 1))) {}

void HaarSampler::place_factor(const ComponentFactor& f, NumMatrix& m) {
    const auto& s = f.planes;
    switch (f.kind) {
        case FactorKind::U1: {
            double th = 2 * std::numbers::pi * uniform_(rng_);
            cd u = std::polar(1.0, th);
            for (int p : s) {
                m(p, p) = u;
                m(p + 3, p + 3) = std::conj(u);
            }
            return;
        }
        case FactorKind::SU2: {
            double x[4], n = 0;
            for (double& v : x) {
                v = normal_(rng_);
                n += v * v;
            }
            n = std::sqrt(n);
            cd a(x[0] / n, x[1] / n), b(x[2] / n, x[3] / n);
            for (int p : s) {
                m(p, p) = a;
                m(p, p + 3) = b;
                m(p + 3, p) = -std::conj(b);
                m(p + 3, p + 3) = std::conj(a);
            }
            return;
        }
        case FactorKind::USp4:
        case FactorKind::USp6: {
            // Quaternionic Gram-Schmidt: columns v_k and w_k = -J conj(v_k).
            const size_t n = s.size(), d = 2 * n;
            std::vector<Vec> vs, basis;
            std::vector<Vec> ws;
            for (size_t k = 0; k < n; ++k) {
                Vec v(d);
                for (auto& x : v) x = cd(normal_(rng_), normal_(rng_));
                orthonormalize(v, basis);
                Vec w(d);
                for (size_t i = 0; i < n; ++i) {
                    w[i] = -std::conj(v[i + n]);
                    w[i + n] = std::conj(v[i]);
                }
                basis.push_back(v);
                basis.push_back(w);
                vs.push_back(v);
                ws.push_back(w);
            }
            auto idx = coords_of(s);
            for (size_t k = 0; k < n; ++k)
                for (size_t i = 0; i < d; ++i) {
                    m(idx[i], idx[k]) = vs[k][i];
                    m(idx[i], idx[k + n]) = ws[k][i];
                }
            return;
        }
        case FactorKind::U3:
        case FactorKind::SU3:
        case FactorKind::SO3: {
            const bool real = f.kind == FactorKind::SO3;
            std::vector<Vec> cols;
            for (int k = 0; k < 3; ++k) {
                Vec v(3);
                for (auto& x : v) x = real ? cd(normal_(rng_), 0) : cd(normal_(rng_), normal_(rng_));
                orthonormalize(v, cols);
                cols.push_back(v);
            }
            Eigen::Matrix3cd a;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) a(i, k) = cols[static_cast<size_t>(k)][static_cast<size_t>(i)];
            if (f.kind == FactorKind::SO3 && a.determinant().real() < 0) a = -a;
            if (f.kind == FactorKind::SU3) a /= std::pow(a.determinant(), 1.0 / 3.0);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    m(i, k) = a(i, k);
                    m(i + 3, k + 3) = std::conj(a(i, k));
                }
            return;
        }
    }
}

NumMatrix HaarSampler::next() {
    NumMatrix m = NumMatrix::Zero();
    for (const auto& f : c_->factors) place_factor(f, m);
    return m;
}

std::vector<NumMatrix> haar_sample(const ConnectedComponentDescriptor& c, const SampleConfig& config) {
    if (config.n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
    NumMatrix a = config.coset_rep ? to_numeric(*config.coset_rep) : NumMatrix::Identity();
    std::vector<NumMatrix> out;
    out.reserve(static_cast<size_t>(config.n_samples));
    for (long chunk = 0; static_cast<long>(out.size()) < config.n_samples; ++chunk) {
        HaarSampler s(c, config.seed, static_cast<uint64_t>(chunk));
        for (long k = 0; k < kChunk && static_cast<long>(out.size()) < config.n_samples; ++k) out.push_back(a * s.next());
    }
    return out;
}

std::array<std::complex<double>, 3> elementary_traces(const NumMatrix& m) {
    NumMatrix m2 = m * m;
    cd p1 = m.trace(), p2 = m2.trace(), p3 = (m2 * m).trace();
    return {p1, (p1 * p1 - p2) / 2.0, (p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0};
}

std::complex<double> evaluate_character(const CharacterSpec& chi, const NumMatrix& m) {
    auto e = elementary_traces(m);
    cd total = 0;
    for (const auto& t : chi.terms)
        total += static_cast<double>(t.coef) * std::pow(e[0], t.j) * std::pow(e[1], t.k) * std::pow(e[2], t.l);
    return total;
}

EmpiricalAverage empirical_average(const ConnectedComponentDescriptor& c, const CharacterSpec& chi,
                                   const SampleConfig& config) {
    if (config.n_samples < 1) throw std::invalid_argument("n_samples must be positive");
    const NumMatrix a = config.coset_rep ? to_numeric(*config.coset_rep) : NumMatrix::Identity();
    const long chunks = (config.n_samples + kChunk - 1) / kChunk;
    struct Sums {
        double re = 0, re2 = 0, im = 0, im2 = 0;
    };
    std::vector<Sums> per(static_cast<size_t>(chunks));
    auto work = [&](long first, long step) {
        for (long ch = first; ch < chunks; ch += step) {
            HaarSampler s(c, config.seed, static_cast<uint64_t>(ch));
            long n = std::min(kChunk, config.n_samples - ch * kChunk);
            Sums& acc = per[static_cast<size_t>(ch)];
            for (long k = 0; k < n; ++k) {
                cd v = evaluate_character(chi, a * s.next());
                acc.re += v.real();
                acc.re2 += v.real() * v.real();
                acc.im += v.imag();
                acc.im2 += v.imag() * v.imag();
            }
        }
    };
    const long workers = std::max(1L, std::min<long>(chunks, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (long w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
    work(0, workers);
    for (auto& t : pool) t.join();
    Sums tot;
    for (const auto& s : per) {
        tot.re += s.re;
        tot.re2 += s.re2;
        tot.im += s.im;
        tot.im2 += s.im2;
    }
    EmpiricalAverage r;
    const double n = static_cast<double>(config.n_samples);
    r.n = config.n_samples;
    r.mean = tot.re / n;
    r.mean_imag = tot.im / n;
    auto se = [n](double s, double s2) {
        double var = n > 1 ? std::max(0.0, (s2 - s * s / n) / (n - 1)) : 0.0;
        return std::sqrt(var / n);
    };
    r.std_error = se(tot.re, tot.re2);
    r.std_error_imag = se(tot.im, tot.im2);
    return r;
}

EmpiricalAverage empirical_average(const CandidateGroup& g, int coset_index, const CharacterSpec& chi,
                                   const SampleConfig& config) {
    if (!g.component) throw std::invalid_argument("candidate without component");
    SampleConfig cfg = config;
    cfg.coset_rep = g.coset_reps.at(static_cast<size_t>(coset_index));
    return empirical_average(*g.component, chi, cfg);
}

bool consistent_with_integer(const EmpiricalAverage& a, double sigmas) {
    constexpr double floor_tol = 1e-9;
    double dr = std::abs(a.mean - std::round(a.mean)), di = std::abs(a.mean_imag);
    return dr <= sigmas * a.std_error + floor_tol && di <= sigmas * a.std_error_imag + floor_tol;
}

}  // namespace stg
