#include "stg/lie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stg {

// ---------------------------------------------------------------------------
// Simple factors and algebras

std::string SimpleFactor::name() const {
    switch (type) {
        case 'A': return "sl" + std::to_string(rank + 1);
        case 'B': return "so" + std::to_string(2 * rank + 1);
        case 'C': return "sp" + std::to_string(2 * rank);
        case 'G': return "g2";
    }
    throw std::logic_error("unknown simple type");
}

std::vector<std::vector<int>> SimpleFactor::cartan() const {
    const int n = rank;
    std::vector<std::vector<int>> a(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    auto at = [&a](int i, int j) -> int& { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
    for (int i = 0; i < n; ++i) at(i, i) = 2;
    for (int i = 0; i + 1 < n; ++i) at(i, i + 1) = at(i + 1, i) = -1;
    if (type == 'B') at(n - 1, n - 2) = -2;  // last root short
    if (type == 'C') at(n - 2, n - 1) = -2;  // last root long
    if (type == 'G') {
        at(0, 1) = -3;  // alpha_1 short
        at(1, 0) = -1;
    }
    return a;
}

long SimpleFactor::weyl_order() const {
    long f = 1;
    switch (type) {
        case 'A':
            for (int k = 2; k <= rank + 1; ++k) f *= k;
            return f;
        case 'B':
        case 'C':
            for (int k = 2; k <= rank; ++k) f *= k;
            return f << rank;
        case 'G': return 12;
    }
    throw std::logic_error("unknown simple type");
}

int LieAlgebraDescriptor::semisimple_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
}

std::vector<std::vector<int>> LieAlgebraDescriptor::cartan() const {
    const int n = semisimple_rank();
    std::vector<std::vector<int>> a(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    int off = 0;
    for (const auto& f : factors) {
        auto c = f.cartan();
        for (int i = 0; i < f.rank; ++i)
            for (int j = 0; j < f.rank; ++j)
                a[static_cast<size_t>(off + i)][static_cast<size_t>(off + j)] = c[static_cast<size_t>(i)][static_cast<size_t>(j)];
        off += f.rank;
    }
    return a;
}

std::vector<int> LieAlgebraDescriptor::factor_of_coordinate() const {
    std::vector<int> out;
    for (size_t k = 0; k < factors.size(); ++k)
        for (int i = 0; i < factors[k].rank; ++i) out.push_back(static_cast<int>(k));
    return out;
}

long LieAlgebraDescriptor::weyl_order() const {
    long w = 1;
    for (const auto& f : factors) w *= f.weyl_order();
    return w;
}

int LieAlgebraDescriptor::dim() const {
    int d = torus_rank;
    for (const auto& f : factors) {
        RootSystem rs(f.cartan());
        d += f.rank + 2 * static_cast<int>(rs.positive_roots.size());
    }
    return d;
}

LieAlgebraDescriptor LieAlgebraDescriptor::parse(const std::string& name) {
    LieAlgebraDescriptor d;
    d.name = name;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, '+')) {
        if (part.size() >= 2 && part[0] == 't') {
            d.torus_rank += std::stoi(part.substr(1));
        } else if (part.rfind("sl", 0) == 0) {
            d.factors.push_back({'A', std::stoi(part.substr(2)) - 1});
        } else if (part.rfind("so", 0) == 0) {
            int n = std::stoi(part.substr(2));
            if (n % 2 == 0) throw std::invalid_argument("even orthogonal algebras are listed as sl4");
            d.factors.push_back({'B', (n - 1) / 2});
        } else if (part.rfind("sp", 0) == 0) {
            d.factors.push_back({'C', std::stoi(part.substr(2)) / 2});
        } else if (part == "g2") {
            d.factors.push_back({'G', 2});
        } else {
            throw std::invalid_argument("unknown Lie algebra factor: " + part);
        }
    }
    return d;
}

std::vector<LieAlgebraDescriptor> algebras_of_rank_at_most(int max_rank) {
    // sp4 = so5 and sl4 = so6 are listed once.
    const std::vector<SimpleFactor> simple{{'A', 1}, {'A', 2}, {'C', 2}, {'G', 2}, {'A', 3}, {'B', 3}, {'C', 3}};
    std::vector<LieAlgebraDescriptor> out;
    std::vector<SimpleFactor> cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int r) {
        for (int k = 0; r + k <= max_rank; ++k) {
            if (r + k == 0) continue;
            LieAlgebraDescriptor d;
            d.torus_rank = k;
            d.factors = cur;
            std::string name = k ? "t" + std::to_string(k) : "";
            for (const auto& f : cur) name += (name.empty() ? "" : "+") + f.name();
            d.name = name;
            out.push_back(d);
        }
        for (size_t i = start; i < simple.size(); ++i) {
            if (r + simple[i].rank > max_rank) continue;
            cur.push_back(simple[i]);
            rec(i, r + simple[i].rank);
            cur.pop_back();
        }
    };
    rec(0, 0);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.rank() < b.rank(); });
    return out;
}

std::string to_string(DualityType d) {
    switch (d) {
        case DualityType::Orthogonal: return "orthogonal";
        case DualityType::Symplectic: return "symplectic";
        case DualityType::NotSelfDual: return "not-self-dual";
    }
    return "";
}

bool IrrepInfo::is_trivial() const {
    return std::all_of(highest_weight.begin(), highest_weight.end(), [](int x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Root systems

namespace {

std::vector<std::vector<int>> positive_roots_of(const std::vector<std::vector<int>>& a) {
    const size_t n = a.size();
    std::vector<std::vector<int>> roots;
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        roots.push_back(e);
        seen.insert(e);
    }
    for (size_t q = 0; q < roots.size(); ++q) {
        const std::vector<int> beta = roots[q];
        for (size_t i = 0; i < n; ++i) {
            int pairing = 0;  // <beta, alpha_i^vee>
            for (size_t j = 0; j < n; ++j) pairing += beta[j] * a[i][j];
            int p = 0;
            std::vector<int> down = beta;
            while (true) {
                down[i] -= 1;
                if (!seen.count(down)) break;
                ++p;
            }
            if (p - pairing > 0) {
                std::vector<int> up = beta;
                up[i] += 1;
                if (seen.insert(up).second) roots.push_back(up);
            }
        }
    }
    return roots;
}

std::vector<std::vector<mpq_class>> rational_inverse(std::vector<std::vector<mpq_class>> m) {
    const size_t n = m.size();
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("singular Cartan matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        mpq_class s = 1 / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] *= s;
            inv[c][j] *= s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            mpq_class f = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace

RootSystem::RootSystem(std::vector<std::vector<int>> a) : cartan(std::move(a)) {
    const size_t n = cartan.size();
    positive_roots = positive_roots_of(cartan);
    std::vector<std::vector<int>> at(n, std::vector<int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) at[i][j] = cartan[j][i];
    positive_coroots = positive_roots_of(at);

    // d_i a_ij = d_j a_ji, propagated over each connected component
    half_lengths.assign(n, 0);
    for (size_t s = 0; s < n; ++s) {
        if (half_lengths[s] != 0) continue;
        half_lengths[s] = 1;
        std::vector<size_t> stack{s};
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < n; ++j)
                if (j != i && cartan[i][j] != 0 && half_lengths[j] == 0) {
                    half_lengths[j] = half_lengths[i] * cartan[i][j] / cartan[j][i];
                    stack.push_back(j);
                }
        }
    }
    // (omega_i, omega_j) = D A^{-1}
    std::vector<std::vector<mpq_class>> am(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) am[i][j] = cartan[i][j];
    auto inv = rational_inverse(am);
    weight_form.assign(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) weight_form[i][j] = half_lengths[i] * inv[i][j];
}

mpq_class RootSystem::inner(const std::vector<int>& x, const std::vector<int>& y) const {
    mpq_class s = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j)
            if (x[i] && y[j]) s += weight_form[i][j] * x[i] * y[j];
    return s;
}

std::vector<int> RootSystem::root_in_weight_basis(const std::vector<int>& root) const {
    const size_t n = cartan.size();
    std::vector<int> w(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i] += cartan[i][j] * root[j];
    return w;
}

long RootSystem::weyl_dimension(const std::vector<int>& hw) const {
    mpq_class d = 1;
    for (const auto& c : positive_coroots) {
        long num = 0, den = 0;
        for (size_t i = 0; i < c.size(); ++i) {
            num += c[i] * (hw[i] + 1);
            den += c[i];
        }
        d *= mpq_class(num, den);
    }
    d.canonicalize();
    if (d.get_den() != 1) throw std::logic_error("Weyl dimension is not an integer");
    return d.get_num().get_si();
}

std::vector<int> RootSystem::dual_weight(const std::vector<int>& hw) const {
    const size_t n = cartan.size();
    std::vector<int> mu(n);
    for (size_t i = 0; i < n; ++i) mu[i] = -hw[i];
    for (bool moved = true; moved;) {
        moved = false;
        for (size_t i = 0; i < n; ++i)
            if (mu[i] < 0) {
                int c = mu[i];
                for (size_t j = 0; j < n; ++j) mu[j] -= c * cartan[j][i];
                moved = true;
            }
    }
    return mu;
}

DualityType RootSystem::duality(const std::vector<int>& hw) const {
    if (dual_weight(hw) != hw) return DualityType::NotSelfDual;
    long s = 0;  // <hw, 2 rho^vee>
    for (const auto& c : positive_coroots)
        for (size_t i = 0; i < c.size(); ++i) s += c[i] * hw[i];
    return s % 2 ? DualityType::Symplectic : DualityType::Orthogonal;
}

std::map<std::vector<int>, long> RootSystem::weights(const std::vector<int>& hw) const {
    const size_t n = cartan.size();
    std::vector<int> rho(n, 1);
    auto plus = [](std::vector<int> a, const std::vector<int>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    const mpq_class top = inner(plus(hw, rho), plus(hw, rho));
    std::vector<std::vector<int>> roots_w;
    for (const auto& r : positive_roots) roots_w.push_back(root_in_weight_basis(r));

    // weights keyed by depth vector k (hw - mu = sum k_j alpha_j)
    std::map<std::vector<int>, long> mult;
    auto weight_of = [&](const std::vector<int>& k) {
        std::vector<int> mu = hw;
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i) mu[i] -= k[j] * cartan[i][j];
        return mu;
    };
    mult[std::vector<int>(n, 0)] = 1;
    std::vector<std::vector<int>> level{std::vector<int>(n, 0)};
    while (!level.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& k : level)
            for (size_t i = 0; i < n; ++i) {
                auto k2 = k;
                k2[i] += 1;
                next.insert(k2);
            }
        level.clear();
        for (const auto& k : next) {
            std::vector<int> mu = weight_of(k);
            mpq_class den = top - inner(plus(mu, rho), plus(mu, rho));
            if (den <= 0) continue;
            mpq_class sum = 0;
            for (size_t r = 0; r < positive_roots.size(); ++r) {
                const auto& alpha = positive_roots[r];
                for (int m = 1;; ++m) {
                    std::vector<int> kk = k;
                    bool ok = true;
                    for (size_t j = 0; j < n; ++j) {
                        kk[j] -= m * alpha[j];
                        if (kk[j] < 0) ok = false;
                    }
                    if (!ok) break;
                    auto it = mult.find(kk);
                    if (it == mult.end()) continue;
                    std::vector<int> nu = mu;
                    for (size_t j = 0; j < n; ++j) nu[j] += m * roots_w[r][j];
                    sum += it->second * inner(nu, roots_w[r]);
                }
            }
            mpq_class m = 2 * sum / den;
            m.canonicalize();
            if (m.get_den() != 1) throw std::logic_error("Freudenthal multiplicity is not an integer");
            long mi = m.get_num().get_si();
            if (mi > 0) {
                mult[k] = mi;
                level.push_back(k);
            }
        }
    }
    std::map<std::vector<int>, long> out;
    for (const auto& [k, m] : mult) out[weight_of(k)] = m;
    return out;
}

// ---------------------------------------------------------------------------
// Irreps

IrrepInfo make_irrep(const LieAlgebraDescriptor& alg, const std::vector<int>& hw) {
    IrrepInfo info;
    info.highest_weight = hw;
    RootSystem rs(alg.cartan());
    info.dimension = rs.weyl_dimension(hw);
    info.duality = rs.duality(hw);
    std::vector<std::string> parts;
    int off = 0;
    for (const auto& f : alg.factors) {
        std::vector<int> h(hw.begin() + off, hw.begin() + off + f.rank);
        RootSystem fr(f.cartan());
        std::string s = std::to_string(fr.weyl_dimension(h));
        std::vector<int> d = fr.dual_weight(h);
        if (d != h && h < d) s += "̄";  // combining macron
        parts.push_back(s);
        off += f.rank;
    }
    if (parts.empty()) {
        info.label = "1";
    } else if (parts.size() == 1) {
        info.label = parts[0];
    } else {
        info.label = "(";
        for (size_t k = 0; k < parts.size(); ++k) info.label += (k ? "," : "") + parts[k];
        info.label += ")";
    }
    return info;
}

std::vector<IrrepInfo> enumerate_irreps(const LieAlgebraDescriptor& alg, long max_dim) {
    if (max_dim > 64) throw std::invalid_argument("enumerate_irreps: max_dim must be <= 64");
    const int n = alg.semisimple_rank();
    RootSystem rs(alg.cartan());
    std::vector<IrrepInfo> out;
    std::vector<int> hw(static_cast<size_t>(n), 0);
    // the dimension is increasing in every coordinate
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(make_irrep(alg, hw));
            return;
        }
        for (int v = 0;; ++v) {
            hw[static_cast<size_t>(i)] = v;
            if (rs.weyl_dimension(hw) > max_dim) break;
            rec(i + 1);
        }
        hw[static_cast<size_t>(i)] = 0;
    };
    if (max_dim >= 1) rec(0);
    std::sort(out.begin(), out.end(), [](const IrrepInfo& a, const IrrepInfo& b) {
        return a.dimension != b.dimension ? a.dimension < b.dimension : a.highest_weight < b.highest_weight;
    });
    return out;
}

long RepDecomposition::dimension() const {
    long d = 0;
    for (const auto& [v, m] : summands) d += v.dimension * m;
    return d;
}

std::string RepDecomposition::str() const {
    std::string s;
    for (const auto& [v, m] : summands)
        for (int k = 0; k < m; ++k) s += (s.empty() ? "" : "⊕") + v.label;
    return s;
}

nlohmann::json RepDecomposition::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [v, m] : summands)
        j.push_back({{"highest_weight", v.highest_weight},
                     {"dimension", v.dimension},
                     {"duality", to_string(v.duality)},
                     {"label", v.label},
                     {"multiplicity", m}});
    return j;
}

namespace {

int multiplicity_of(const RepDecomposition& rep, const std::vector<int>& hw) {
    for (const auto& [v, m] : rep.summands)
        if (v.highest_weight == hw) return m;
    return 0;
}

// Permutations of simple-factor coordinates that swap isomorphic factors.
std::vector<std::vector<int>> factor_permutations(const LieAlgebraDescriptor& alg) {
    const size_t nf = alg.factors.size();
    std::vector<int> order(nf);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        bool ok = true;
        for (size_t k = 0; k < nf; ++k) {
            const auto& a = alg.factors[k];
            const auto& b = alg.factors[static_cast<size_t>(order[k])];
            if (a.type != b.type || a.rank != b.rank) ok = false;
        }
        if (!ok) continue;
        // coordinate map
        std::vector<int> offs;
        int off = 0;
        for (const auto& f : alg.factors) {
            offs.push_back(off);
            off += f.rank;
        }
        std::vector<int> coord;
        for (size_t k = 0; k < nf; ++k) {
            int src = order[k];
            for (int i = 0; i < alg.factors[k].rank; ++i) coord.push_back(offs[static_cast<size_t>(src)] + i);
        }
        perms.push_back(coord);
    } while (std::next_permutation(order.begin(), order.end()));
    return perms;
}

}  // namespace

int centralizer_torus_rank(const RepDecomposition& rep) {
    int r = 0;
    for (const auto& [v, m] : rep.summands) {
        switch (v.duality) {
            case DualityType::Orthogonal:
            case DualityType::Symplectic: r += m / 2; break;
            case DualityType::NotSelfDual:
                if (v.label.find("̄") == std::string::npos) r += m;
                break;
        }
    }
    return r;
}

std::vector<RepDecomposition> admissible_sixdim_reps(const LieAlgebraDescriptor& alg) {
    constexpr long kDim = 6;
    auto irreps = enumerate_irreps(alg, kDim);
    RootSystem rs(alg.cartan());
    auto fac = alg.factor_of_coordinate();
    std::vector<RepDecomposition> found;
    std::vector<int> mult(irreps.size(), 0);
    std::function<void(size_t, long)> rec = [&](size_t i, long left) {
        if (left == 0) {
            RepDecomposition rep;
            for (size_t k = 0; k < irreps.size(); ++k)
                if (mult[k]) rep.summands.emplace_back(irreps[k], mult[k]);
            found.push_back(rep);
            return;
        }
        if (i == irreps.size()) return;
        for (int m = 0; m * irreps[i].dimension <= left; ++m) {
            mult[i] = m;
            rec(i + 1, left - m * irreps[i].dimension);
        }
        mult[i] = 0;
    };
    rec(0, kDim);

    std::map<std::string, RepDecomposition> out;
    for (const auto& rep : found) {
        bool ok = true;
        for (const auto& [v, m] : rep.summands) {
            if (v.is_trivial() && alg.torus_rank == 0) ok = false;
            if (v.duality == DualityType::Orthogonal && m % 2) ok = false;
            if (v.duality == DualityType::NotSelfDual && multiplicity_of(rep, rs.dual_weight(v.highest_weight)) != m)
                ok = false;
        }
        for (size_t f = 0; f < alg.factors.size() && ok; ++f) {
            bool acts = false;
            for (const auto& [v, m] : rep.summands)
                for (size_t i = 0; i < v.highest_weight.size(); ++i)
                    if (fac[i] == static_cast<int>(f) && v.highest_weight[i] != 0) acts = true;
            ok = acts;
        }
        if (!ok || centralizer_torus_rank(rep) < alg.torus_rank) continue;
        // canonical form under swaps of isomorphic factors
        std::string best;
        RepDecomposition best_rep;
        for (const auto& perm : factor_permutations(alg)) {
            RepDecomposition p;
            for (const auto& [v, m] : rep.summands) {
                std::vector<int> hw(perm.size());
                for (size_t i = 0; i < perm.size(); ++i) hw[i] = v.highest_weight[static_cast<size_t>(perm[i])];
                p.summands.emplace_back(make_irrep(alg, hw), m);
            }
            std::sort(p.summands.begin(), p.summands.end());
            std::string key = p.to_json().dump();
            if (best.empty() || key < best) {
                best = key;
                best_rep = p;
            }
        }
        out.emplace(best, best_rep);
    }
    std::vector<RepDecomposition> res;
    for (auto& [k, v] : out) res.push_back(v);
    return res;
}

// ---------------------------------------------------------------------------
// Elimination pipeline

namespace {

using QVec = std::vector<mpq_class>;

// Solve M x = b exactly; M has full column rank. Returns nullopt if inconsistent.
std::optional<QVec> solve_full_rank(const std::vector<QVec>& m, const QVec& b) {
    const size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    std::vector<QVec> a(rows, QVec(cols + 1));
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) a[r][c] = m[r][c];
        a[r][cols] = b[r];
    }
    size_t pr = 0;
    std::vector<size_t> pivots;
    for (size_t c = 0; c < cols; ++c) {
        size_t p = pr;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) throw std::logic_error("weight matrix is not of full column rank");
        std::swap(a[p], a[pr]);
        mpq_class s = 1 / a[pr][c];
        for (auto& x : a[pr]) x *= s;
        for (size_t r = 0; r < rows; ++r) {
            if (r == pr || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (size_t j = 0; j <= cols; ++j) a[r][j] -= f * a[pr][j];
        }
        pivots.push_back(c);
        ++pr;
    }
    for (size_t r = pr; r < rows; ++r)
        if (a[r][cols] != 0) return std::nullopt;
    QVec x(cols);
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = a[k][cols];
    return x;
}

int rational_rank(std::vector<QVec> v) {
    if (v.empty()) return 0;
    const size_t cols = v[0].size();
    size_t pr = 0;
    for (size_t c = 0; c < cols && pr < v.size(); ++c) {
        size_t p = pr;
        while (p < v.size() && v[p][c] == 0) ++p;
        if (p == v.size()) continue;
        std::swap(v[p], v[pr]);
        for (size_t r = 0; r < v.size(); ++r) {
            if (r == pr || v[r][c] == 0) continue;
            mpq_class f = v[r][c] / v[pr][c];
            for (size_t j = 0; j < cols; ++j) v[r][j] -= f * v[pr][j];
        }
        ++pr;
    }
    return static_cast<int>(pr);
}

// Reduced row echelon key of a span.
std::string span_key(std::vector<QVec> v) {
    const size_t cols = v.empty() ? 0 : v[0].size();
    size_t pr = 0;
    for (size_t c = 0; c < cols && pr < v.size(); ++c) {
        size_t p = pr;
        while (p < v.size() && v[p][c] == 0) ++p;
        if (p == v.size()) continue;
        std::swap(v[p], v[pr]);
        mpq_class s = 1 / v[pr][c];
        for (auto& x : v[pr]) x *= s;
        for (size_t r = 0; r < v.size(); ++r) {
            if (r == pr || v[r][c] == 0) continue;
            mpq_class f = v[r][c];
            for (size_t j = 0; j < cols; ++j) v[r][j] -= f * v[pr][j];
        }
        ++pr;
    }
    std::string k;
    for (size_t r = 0; r < pr; ++r) {
        for (const auto& x : v[r]) k += x.get_str() + ",";
        k += ";";
    }
    return k;
}

struct Slot {
    int iso;          // isotypic index into rep.summands
    std::vector<int> mu;
    std::vector<int> nu;  // centralizer torus weight
};

struct MultSpace {
    int iso;
    std::vector<int> nu;
};

}  // namespace

std::string ConnectedCandidate::invariant_key() const {
    std::string k = algebra.name + "|" + rep.str() + "|" + std::to_string(commutant_dim) + "|";
    for (int d : irrep_dims) k += std::to_string(d) + ",";
    return k;
}

PipelineReport connected_candidates() {
    PipelineReport report;
    std::map<std::string, ConnectedCandidate> seen;
    for (const auto& alg : algebras_of_rank_at_most(3)) {
        auto reps = admissible_sixdim_reps(alg);
        if (reps.empty()) {
            report.eliminated_algebras.push_back(alg.name);
            continue;
        }
        RootSystem rs(alg.cartan());
        const int rs_rank = alg.semisimple_rank();
        auto fac = alg.factor_of_coordinate();
        for (const auto& rep : reps) {
            const int rc = centralizer_torus_rank(rep);
            // multiplicity-space weights of the centralizer torus
            std::vector<MultSpace> spaces;
            std::vector<int> u2_coords;  // O(2) coordinates attached to a 2-dim symplectic irrep
            int coord = 0;
            for (size_t s = 0; s < rep.summands.size(); ++s) {
                const auto& [v, m] = rep.summands[s];
                auto unit = [rc](int c, int sign) {
                    std::vector<int> e(static_cast<size_t>(rc), 0);
                    e[static_cast<size_t>(c)] = sign;
                    return e;
                };
                if (v.duality != DualityType::NotSelfDual) {
                    for (int j = 0; j < m / 2; ++j) {
                        spaces.push_back({static_cast<int>(s), unit(coord + j, 1)});
                        spaces.push_back({static_cast<int>(s), unit(coord + j, -1)});
                    }
                    if (m % 2) spaces.push_back({static_cast<int>(s), std::vector<int>(static_cast<size_t>(rc), 0)});
                    if (v.duality == DualityType::Symplectic && m == 2 && v.dimension == 2) u2_coords.push_back(coord);
                    coord += m / 2;
                } else if (v.label.find("̄") == std::string::npos) {
                    // unbarred member of a dual pair: V (x) e_j and V* (x) -e_j
                    auto dual = rs.dual_weight(v.highest_weight);
                    int ds = -1;
                    for (size_t t = 0; t < rep.summands.size(); ++t)
                        if (rep.summands[t].first.highest_weight == dual) ds = static_cast<int>(t);
                    for (int j = 0; j < m; ++j) {
                        spaces.push_back({static_cast<int>(s), unit(coord + j, 1)});
                        spaces.push_back({ds, unit(coord + j, -1)});
                    }
                    coord += m;
                }
            }
            std::vector<Slot> slots;
            for (const auto& sp : spaces) {
                const auto& v = rep.summands[static_cast<size_t>(sp.iso)].first;
                for (const auto& [mu, c] : rs.weights(v.highest_weight))
                    for (long k = 0; k < c; ++k) slots.push_back({sp.iso, mu, sp.nu});
            }
            if (slots.size() != 6) throw std::logic_error("pipeline: slot count differs from 6");
            std::vector<QVec> mat;
            for (const auto& s : slots) {
                QVec row;
                for (int x : s.mu) row.emplace_back(x);
                for (int x : s.nu) row.emplace_back(x);
                mat.push_back(row);
            }
            // Hodge cocharacters: all pairings +-1, three of each sign
            std::vector<QVec> hodge;
            std::set<std::string> hk;
            for (int mask = 0; mask < 64; ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) != 3) continue;
                QVec b;
                for (int k = 0; k < 6; ++k) b.emplace_back((mask >> k) & 1 ? 1 : -1);
                auto x = solve_full_rank(mat, b);
                if (!x) continue;
                std::string key;
                for (const auto& q : *x) key += q.get_str() + ",";
                if (hk.insert(key).second) hodge.push_back(*x);
            }
            auto tau_of = [&](const QVec& th) { return QVec(th.begin() + rs_rank, th.end()); };
            const int k = alg.torus_rank;
            // candidate subspaces T of the centralizer torus
            std::vector<std::vector<QVec>> subspaces;
            if (k == 0) {
                subspaces.push_back({});
            } else {
                std::vector<QVec> taus;
                std::set<std::string> tk;
                for (const auto& th : hodge) {
                    QVec t = tau_of(th);
                    if (std::all_of(t.begin(), t.end(), [](const mpq_class& q) { return q == 0; })) continue;
                    if (tk.insert(span_key({t})).second) taus.push_back(t);
                }
                std::set<std::string> sk;
                std::vector<int> pick;
                std::function<void(size_t)> choose = [&](size_t start) {
                    if (static_cast<int>(pick.size()) == k) {
                        std::vector<QVec> b;
                        for (int i : pick) b.push_back(taus[static_cast<size_t>(i)]);
                        if (rational_rank(b) == k && sk.insert(span_key(b)).second) subspaces.push_back(b);
                        return;
                    }
                    for (size_t i = start; i < taus.size(); ++i) {
                        pick.push_back(static_cast<int>(i));
                        choose(i + 1);
                        pick.pop_back();
                    }
                };
                choose(0);
            }
            for (const auto& tb : subspaces) {
                std::vector<QVec> in_t;
                for (const auto& th : hodge) {
                    auto ext = tb;
                    ext.push_back(tau_of(th));
                    if (rational_rank(ext) == k) in_t.push_back(th);
                }
                if (in_t.empty()) continue;
                std::vector<QVec> taus;
                for (const auto& th : in_t) taus.push_back(tau_of(th));
                if (k > 0 && rational_rank(taus) != k) continue;
                bool dense = true;
                for (size_t f = 0; f < alg.factors.size(); ++f) {
                    bool hit = false;
                    for (const auto& th : in_t)
                        for (int i = 0; i < rs_rank; ++i)
                            if (fac[static_cast<size_t>(i)] == static_cast<int>(f) && th[static_cast<size_t>(i)] != 0) hit = true;
                    dense = dense && hit;
                }
                if (!dense) continue;

                ConnectedCandidate cand;
                cand.algebra = alg;
                cand.rep = rep;
                cand.torus_basis = tb;
                cand.hodge = in_t;
                cand.dim = alg.dim();
                std::map<std::pair<int, std::vector<mpq_class>>, int> count;
                for (const auto& sp : spaces) {
                    std::vector<mpq_class> restricted;
                    for (const auto& t : tb) {
                        mpq_class s = 0;
                        for (size_t i = 0; i < t.size(); ++i) s += t[i] * sp.nu[i];
                        restricted.push_back(s);
                    }
                    ++count[{sp.iso, restricted}];
                }
                for (const auto& [key, c] : count) {
                    cand.commutant_dim += c * c;
                    for (int r = 0; r < c; ++r)
                        cand.irrep_dims.push_back(
                            static_cast<int>(rep.summands[static_cast<size_t>(key.first)].first.dimension));
                }
                std::sort(cand.irrep_dims.begin(), cand.irrep_dims.end());
                for (int c : u2_coords)
                    for (const auto& t : tb)
                        if (t[static_cast<size_t>(c)] != 0) cand.u2_factor = true;
                seen.emplace(cand.invariant_key(), cand);
            }
        }
    }
    for (auto& [key, c] : seen) {
        report.after_hodge.push_back(c);
        if (!c.u2_factor) report.after_u2_exclusion.push_back(c);
    }
    auto by_dim = [](const ConnectedCandidate& a, const ConnectedCandidate& b) {
        return a.dim != b.dim ? a.dim > b.dim : a.invariant_key() < b.invariant_key();
    };
    std::sort(report.after_hodge.begin(), report.after_hodge.end(), by_dim);
    std::sort(report.after_u2_exclusion.begin(), report.after_u2_exclusion.end(), by_dim);
    return report;
}

}  // namespace stg
