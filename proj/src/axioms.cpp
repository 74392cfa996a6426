#include "stg/axioms.hpp"

#include <array>
#include <cmath>
#include <map>

#include "stg/haar.hpp"

namespace stg {

// ---------------------------------------------------------------------------
// Characters

int CharacterSpec::max_degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.j + 2 * t.k + 3 * t.l);
    return d;
}

CharacterSpec CharacterSpec::a1() { return {"a1", {{1, 1, 0, 0}}}; }
CharacterSpec CharacterSpec::a1_squared() { return {"a1^2", {{1, 2, 0, 0}}}; }
CharacterSpec CharacterSpec::sym2() { return {"Sym2", {{1, 2, 0, 0}, {-1, 0, 1, 0}}}; }
CharacterSpec CharacterSpec::lambda2() { return {"L2", {{1, 0, 1, 0}}}; }
CharacterSpec CharacterSpec::lambda3() { return {"L3", {{1, 0, 0, 1}}}; }
CharacterSpec CharacterSpec::lambda2_squared() { return {"L2^2", {{1, 0, 2, 0}}}; }
CharacterSpec CharacterSpec::a1_lambda2() { return {"a1*L2", {{1, 1, 1, 0}}}; }

const std::vector<CharacterSpec>& default_character_family() {
    static const std::vector<CharacterSpec> f{CharacterSpec::a1(),      CharacterSpec::a1_squared(),
                                              CharacterSpec::sym2(),    CharacterSpec::lambda2(),
                                              CharacterSpec::lambda3(), CharacterSpec::lambda2_squared(),
                                              CharacterSpec::a1_lambda2()};
    return f;
}

CharacterSpec CharacterSpec::parse(const std::string& name) {
    for (const auto& c : default_character_family())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown character: " + name);
}

ExactMatrix embed_u13_element(const GroupElement& e) {
    ExactMatrix m = unitary_embedding(e.mat);
    return e.antilinear ? m * symplectic_form(6) : m;
}

// ---------------------------------------------------------------------------
// Twisted torus averages over Laurent polynomials in the component variables.

namespace {

// Per factor k: slot 4k is the U(1) variable t (signed exponent); for SU(2)
// the slots 4k..4k+3 are a, conj(a), b, conj(b).
using Key = std::array<int8_t, 12>;
using Poly = std::map<Key, CycNum>;

void add_into(Poly& p, const Key& k, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [k, c] : b) add_into(r, k, c);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Key k;
            for (size_t s = 0; s < k.size(); ++s) k[s] = static_cast<int8_t>(ka[s] + kb[s]);
            add_into(r, k, ca * cb);
        }
    return r;
}

Poly scale(const Poly& a, const CycNum& s) {
    Poly r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a) r.emplace(k, c * s);
    return r;
}

Poly monomial(int slot, int exp, const CycNum& c = 1) {
    Key k{};
    if (slot >= 0) k[static_cast<size_t>(slot)] = static_cast<int8_t>(exp);
    Poly p;
    add_into(p, k, c);
    return p;
}

Poly constant(const CycNum& c) { return monomial(-1, 0, c); }

using PolyMatrix = std::vector<std::vector<Poly>>;

// The generic element of G0 in the component variables.
PolyMatrix generic_element(const ConnectedComponentDescriptor& c) {
    PolyMatrix g(6, std::vector<Poly>(6));
    for (size_t f = 0; f < c.factors.size(); ++f) {
        const auto& fac = c.factors[f];
        const int s = static_cast<int>(4 * f);
        for (int p : fac.planes) {
            const auto P = static_cast<size_t>(p), Q = static_cast<size_t>(p + 3);
            if (fac.kind == FactorKind::U1) {
                g[P][P] = monomial(s, 1);
                g[Q][Q] = monomial(s, -1);
            } else {
                g[P][P] = monomial(s, 1);
                g[Q][Q] = monomial(s + 1, 1);
                g[P][Q] = monomial(s + 2, 1);
                g[Q][P] = monomial(s + 3, 1, -1);
            }
        }
    }
    return g;
}

Poly det_minor(const PolyMatrix& m, const std::vector<size_t>& idx) {
    if (idx.size() == 1) return m[idx[0]][idx[0]];
    if (idx.size() == 2)
        return add(mul(m[idx[0]][idx[0]], m[idx[1]][idx[1]]), scale(mul(m[idx[0]][idx[1]], m[idx[1]][idx[0]]), -1));
    // Laplace along the first row.
    Poly r;
    for (size_t c = 0; c < idx.size(); ++c) {
        if (m[idx[0]][idx[c]].empty()) continue;
        // minor rows idx[1..], columns idx without c
        const size_t r1 = idx[1], r2 = idx[2];
        std::vector<size_t> cols;
        for (size_t k = 0; k < idx.size(); ++k)
            if (k != c) cols.push_back(idx[k]);
        Poly d2 = add(mul(m[r1][cols[0]], m[r2][cols[1]]), scale(mul(m[r1][cols[1]], m[r2][cols[0]]), -1));
        Poly t = mul(m[idx[0]][idx[c]], d2);
        r = add(r, c % 2 ? scale(t, -1) : t);
    }
    return r;
}

Poly elementary(const PolyMatrix& m, int k) {
    Poly r;
    std::vector<size_t> idx;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(idx.size()) == k) {
            r = add(r, det_minor(m, idx));
            return;
        }
        for (size_t i = start; i < 6; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return r;
}

mpq_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return mpq_class(f);
}

CycNum haar_expectation(const ConnectedComponentDescriptor& c, const Poly& p) {
    CycNum total;
    for (const auto& [k, coef] : p) {
        mpq_class w = 1;
        bool zero = false;
        for (size_t f = 0; f < c.factors.size() && !zero; ++f) {
            const size_t s = 4 * f;
            if (c.factors[f].kind == FactorKind::U1) {
                zero = k[s] != 0;
            } else {
                int a = k[s], ab = k[s + 1], b = k[s + 2], bb = k[s + 3];
                if (a != ab || b != bb) zero = true;
                else w *= factorial(a) * factorial(b) / factorial(a + b + 1);
            }
        }
        if (!zero) total += coef * CycNum(w);
    }
    return total;
}

}  // namespace

namespace {

// Lazily expands e1, e2, e3 of A g and their powers for one coset.
class CosetAverager {
public:
    CosetAverager(const ConnectedComponentDescriptor& c, const ExactMatrix& coset_rep) : c_(c) {
        if (!c.exact_average_supported()) throw ExactAverageUnsupported(c.id);
        if (coset_rep.dim() != 6) throw DimensionMismatch("coset representative must be 6x6");
        PolyMatrix g = generic_element(c);
        m_.assign(6, std::vector<Poly>(6));
        for (size_t i = 0; i < 6; ++i)
            for (size_t k = 0; k < 6; ++k) {
                const CycNum& a = coset_rep(static_cast<int>(i), static_cast<int>(k));
                if (a.is_zero()) continue;
                for (size_t j = 0; j < 6; ++j)
                    if (!g[k][j].empty()) m_[i][j] = add(m_[i][j], scale(g[k][j], a));
            }
    }

    CycNum average(const CharacterSpec& chi) {
        if (chi.max_degree() > 6) throw std::invalid_argument("character degree exceeds 6");
        CycNum total;
        for (const auto& t : chi.terms) total += CycNum(t.coef) * expect(t.j, t.k, t.l);
        return total;
    }

private:
    const ConnectedComponentDescriptor& c_;
    PolyMatrix m_;
    std::array<std::vector<Poly>, 3> powers_;  // powers_[k][p] = e_{k+1}^p
    std::map<std::array<int, 3>, CycNum> memo_;

    const Poly& pw(size_t k, int p) {
        auto& v = powers_[k];
        if (v.empty()) v.push_back(constant(1));
        if (v.size() == 1 && p > 0) v.push_back(elementary(m_, static_cast<int>(k) + 1));
        while (static_cast<int>(v.size()) <= p) v.push_back(mul(v.back(), v[1]));
        return v[static_cast<size_t>(p)];
    }

    CycNum expect(int j, int k, int l) {
        std::array<int, 3> key{j, k, l};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Poly p = pw(0, j);
        if (k) p = mul(p, pw(1, k));
        if (l) p = mul(p, pw(2, l));
        CycNum v = haar_expectation(c_, p);
        memo_.emplace(key, v);
        return v;
    }
};

}  // namespace

std::vector<CycNum> coset_character_averages(const ConnectedComponentDescriptor& c, const ExactMatrix& coset_rep,
                                             const std::vector<CharacterSpec>& family) {
    CosetAverager av(c, coset_rep);
    std::vector<CycNum> out;
    for (const auto& chi : family) out.push_back(av.average(chi));
    return out;
}

CycNum coset_character_average(const ConnectedComponentDescriptor& c, const ExactMatrix& coset_rep,
                               const CharacterSpec& chi) {
    return coset_character_averages(c, coset_rep, {chi}).front();
}

// ---------------------------------------------------------------------------

AverageMode parse_mode(const std::string& s) {
    if (s == "exact") return AverageMode::Exact;
    if (s == "mc") return AverageMode::MonteCarlo;
    if (s == "auto") return AverageMode::Auto;
    throw std::invalid_argument("unknown mode: " + s);
}

std::string to_string(AverageMode m) {
    switch (m) {
        case AverageMode::Exact: return "exact";
        case AverageMode::MonteCarlo: return "mc";
        case AverageMode::Auto: return "auto";
    }
    return "";
}

nlohmann::json ST3Report::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["averages"] = nlohmann::json::array();
    for (const auto& a : averages) {
        nlohmann::json x{{"coset", a.coset}, {"character", a.character}, {"exact", a.exact}, {"integral", a.integral}};
        if (a.value) x["value"] = a.value->str();
        else {
            x["mean"] = a.mean;
            x["mean_imag"] = a.mean_imag;
            x["std_error"] = a.std_error;
        }
        j["averages"].push_back(x);
    }
    return j;
}

ST3Report check_st3(const CandidateGroup& g, const std::vector<CharacterSpec>& family, AverageMode mode,
                    const McOptions& mc, bool fail_fast) {
    if (!g.component) throw std::invalid_argument("candidate without component");
    if (family.empty()) throw std::invalid_argument("empty character family");
    const auto& c = *g.component;
    bool exact = mode == AverageMode::Exact || (mode == AverageMode::Auto && c.exact_average_supported());
    if (exact && !c.exact_average_supported()) throw ExactAverageUnsupported(c.id);
    ST3Report rep;
    for (size_t i = 0; i < g.coset_reps.size(); ++i) {
        if (fail_fast && !rep.pass) break;
        std::optional<CosetAverager> av;
        if (exact) av.emplace(c, g.coset_reps[i]);
        for (size_t ci = 0; ci < family.size(); ++ci) {
            if (fail_fast && !rep.pass) break;
            const auto& chi = family[ci];
            CosetAverage a;
            a.coset = static_cast<int>(i);
            a.character = chi.name;
            a.exact = exact;
            if (exact) {
                a.value = av->average(chi);
                a.integral = recognize_rational_integer(*a.value).is_integer;
            } else {
                SampleConfig cfg;
                cfg.seed = splitmix64(mc.seed ^ (0x9e37ull * (i + 1)));
                cfg.n_samples = mc.samples;
                auto e = empirical_average(g, static_cast<int>(i), chi, cfg);
                a.mean = e.mean;
                a.mean_imag = e.mean_imag;
                a.std_error = e.std_error;
                a.integral = consistent_with_integer(e);
            }
            rep.pass = rep.pass && a.integral;
            rep.averages.push_back(std::move(a));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json ST4Report::to_json() const {
    return {{"pass", pass},
            {"commutant_dim", commutant_dim},
            {"fixer_dim", fixer_dim},
            {"component_dim", component_dim},
            {"escaping_probes", escaping_probes}};
}

ST4Report check_st4(const ConnectedComponentDescriptor& c) {
    ST4Report rep;
    rep.component_dim = c.dim;
    auto comm = commutant_basis(c.test_generators, 6);
    rep.commutant_dim = static_cast<int>(comm.dimension());
    // X in sp6(C): X^T J + J X = 0, and [X, b] = 0 for every commutant basis element b.
    const ExactMatrix jf = symplectic_form(6);
    LinearSpan span(36);
    auto var = [](int i, int j) { return static_cast<size_t>(i * 6 + j); };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            CycVector row(36);
            for (int k = 0; k < 6; ++k) {
                row[var(k, i)] += jf(k, j);
                row[var(k, j)] += jf(i, k);
            }
            span.add(row);
        }
    for (const auto& b : comm.basis)
        for (int i = 0; i < 6 && span.rank() < 36; ++i)
            for (int j = 0; j < 6; ++j) {
                // (X b - b X)_{ij}
                CycVector row(36);
                for (int k = 0; k < 6; ++k) {
                    row[var(i, k)] += b(k, j);
                    row[var(k, j)] -= b(i, k);
                }
                span.add(row);
            }
    rep.fixer_dim = 36 - static_cast<int>(span.rank());
    for (const auto& probe : st4_probes()) {
        if (!check_usp_membership(probe.mat)) continue;
        bool commutes = true;
        for (const auto& b : comm.basis)
            if (probe.mat * b != b * probe.mat) {
                commutes = false;
                break;
            }
        if (commutes && !c.contains(probe.mat)) rep.escaping_probes.push_back(probe.name);
    }
    rep.pass = rep.fixer_dim == c.dim && rep.escaping_probes.empty();
    return rep;
}

// ---------------------------------------------------------------------------

bool normalizes(const ConnectedComponentDescriptor& c, const ExactMatrix& a) {
    ExactMatrix ai = a.inverse();
    for (const auto& g : c.test_generators)
        if (!c.contains(a * g * ai)) return false;
    return true;
}

nlohmann::json AxiomReport::to_json() const {
    nlohmann::json h;
    h["dense"] = hodge.dense;
    h["generated_dim"] = hodge.generated_dim;
    h["circles"] = nlohmann::json::array();
    for (const auto& th : hodge.circles) h["circles"].push_back({{"weights", th.weights}, {"exponents", th.exponents}});
    return {{"pass", pass()},
            {"st1", {{"pass", st1}, {"failing_cosets", st1_failures}}},
            {"st2", h},
            {"st3", st3_report.to_json()},
            {"st4", st4_report.to_json()}};
}

AxiomReport check_candidate(const CandidateGroup& g, AverageMode mode, const McOptions& mc) {
    if (!g.component) throw std::invalid_argument("candidate without component");
    AxiomReport r;
    for (size_t i = 0; i < g.coset_reps.size(); ++i)
        if (!check_usp_membership(g.coset_reps[i]) || !normalizes(*g.component, g.coset_reps[i]))
            r.st1_failures.push_back(static_cast<int>(i));
    r.st1 = r.st1_failures.empty();
    r.hodge = hodge_circles(*g.component);
    r.st2 = r.hodge.dense;
    r.st3_report = check_st3(g, default_character_family(), mode, mc);
    r.st3 = r.st3_report.pass;
    r.st4_report = check_st4(*g.component);
    r.st4 = r.st4_report.pass;
    return r;
}

}  // namespace stg
