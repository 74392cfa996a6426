#include "stg/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace stg {

GroupElement GroupElement::operator*(const GroupElement& b) const {
    return GroupElement(mat * (antilinear ? b.mat.conj() : b.mat), antilinear != b.antilinear);
}

GroupElement GroupElement::inverse() const {
    ExactMatrix inv = mat.inverse();
    return GroupElement(antilinear ? inv.conj() : inv, antilinear);
}

// ---------------------------------------------------------------------------
// CayleyGroup

CayleyGroup::CayleyGroup(int n, std::vector<int32_t> table) : n_(n), mul_(std::move(table)) {
    inv_.assign(static_cast<size_t>(n), -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0) {
                inv_[static_cast<size_t>(a)] = b;
                break;
            }
    ord_.assign(static_cast<size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        int k = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        ord_[static_cast<size_t>(a)] = k;
    }
}

int CayleyGroup::power(int a, long e) const {
    long o = elem_order(a);
    e %= o;
    if (e < 0) e += o;
    int x = 0;
    for (long k = 0; k < e; ++k) x = mul(x, a);
    return x;
}

Bits CayleyGroup::all() const {
    Bits b(static_cast<size_t>(n_));
    b.set();
    return b;
}

Bits CayleyGroup::closure(const std::vector<int>& gens) const {
    Bits in(static_cast<size_t>(n_));
    std::vector<int> list{0};
    in.set(0);
    for (size_t q = 0; q < list.size(); ++q)
        for (int g : gens) {
            int y = mul(list[q], g);
            if (!in.test(static_cast<size_t>(y))) {
                in.set(static_cast<size_t>(y));
                list.push_back(y);
            }
        }
    return in;
}

Bits CayleyGroup::join(const Bits& s, const std::vector<int>& sgens, int g) const {
    Bits in = s;
    std::vector<int> list = elements_of(s);
    std::vector<int> gens = sgens;
    gens.push_back(g);
    for (size_t q = 0; q < list.size(); ++q)
        for (int h : gens) {
            int y = mul(list[q], h);
            if (!in.test(static_cast<size_t>(y))) {
                in.set(static_cast<size_t>(y));
                list.push_back(y);
            }
        }
    return in;
}

Bits CayleyGroup::conjugate(const Bits& s, int x) const {
    Bits out(static_cast<size_t>(n_));
    int xi = inv(x);
    for (size_t a = s.find_first(); a != Bits::npos; a = s.find_next(a))
        out.set(static_cast<size_t>(mul(mul(x, static_cast<int>(a)), xi)));
    return out;
}

Bits CayleyGroup::normalizer(const Bits& s) const {
    Bits out(static_cast<size_t>(n_));
    std::vector<int> el = elements_of(s);
    for (int x = 0; x < n_; ++x) {
        int xi = inv(x);
        bool ok = true;
        for (int a : el)
            if (!s.test(static_cast<size_t>(mul(mul(x, a), xi)))) {
                ok = false;
                break;
            }
        if (ok) out.set(static_cast<size_t>(x));
    }
    return out;
}

Bits CayleyGroup::derived_subgroup(const Bits& s) const {
    std::vector<int> el = elements_of(s);
    Bits comm(static_cast<size_t>(n_));
    std::vector<int> gens;
    for (int a : el)
        for (int b : el) {
            int c = mul(mul(a, b), mul(inv(a), inv(b)));
            if (!comm.test(static_cast<size_t>(c))) {
                comm.set(static_cast<size_t>(c));
                gens.push_back(c);
            }
        }
    return closure(gens);
}

bool CayleyGroup::is_subgroup(const Bits& s) const {
    if (!s.test(0)) return false;
    std::vector<int> el = elements_of(s);
    for (int a : el)
        for (int b : el)
            if (!s.test(static_cast<size_t>(mul(a, b)))) return false;
    return true;
}

std::vector<int> CayleyGroup::small_generating_set(const Bits& s) const {
    std::vector<int> el = elements_of(s);
    std::stable_sort(el.begin(), el.end(), [&](int a, int b) { return elem_order(a) > elem_order(b); });
    std::vector<int> gens;
    Bits cur = closure({});
    size_t target = s.count();
    for (int x : el) {
        if (cur.count() == target) break;
        if (cur.test(static_cast<size_t>(x))) continue;
        gens.push_back(x);
        cur = join(cur, std::vector<int>(gens.begin(), gens.end() - 1), x);
    }
    return gens;
}

std::vector<int> CayleyGroup::elements_of(const Bits& s) {
    std::vector<int> out;
    out.reserve(s.count());
    for (size_t a = s.find_first(); a != Bits::npos; a = s.find_next(a)) out.push_back(static_cast<int>(a));
    return out;
}

const std::vector<std::vector<int>>& CayleyGroup::conjugacy_classes() const {
    if (!classes_) {
        auto cls = std::make_shared<std::vector<std::vector<int>>>();
        auto of = std::make_shared<std::vector<int>>(static_cast<size_t>(n_), -1);
        for (int a = 0; a < n_; ++a) {
            if ((*of)[static_cast<size_t>(a)] >= 0) continue;
            std::vector<int> c;
            int id = static_cast<int>(cls->size());
            for (int x = 0; x < n_; ++x) {
                int b = conj(x, a);
                if ((*of)[static_cast<size_t>(b)] < 0) {
                    (*of)[static_cast<size_t>(b)] = id;
                    c.push_back(b);
                }
            }
            std::sort(c.begin(), c.end());
            cls->push_back(std::move(c));
        }
        classes_ = cls;
        class_of_ = of;
    }
    return *classes_;
}

const std::vector<int>& CayleyGroup::class_index() const {
    conjugacy_classes();
    return *class_of_;
}

std::vector<int> CayleyGroup::class_sizes(const Bits& s) const {
    std::vector<int> el = elements_of(s);
    std::vector<int> size_of(static_cast<size_t>(n_), 0);
    Bits done(static_cast<size_t>(n_));
    for (int a : el) {
        if (done.test(static_cast<size_t>(a))) continue;
        std::vector<int> c;
        for (int x : el) {
            int b = conj(x, a);
            if (!done.test(static_cast<size_t>(b))) {
                done.set(static_cast<size_t>(b));
                c.push_back(b);
            }
        }
        for (int b : c) size_of[static_cast<size_t>(b)] = static_cast<int>(c.size());
    }
    return size_of;
}

// ---------------------------------------------------------------------------
// Subgroup classes

namespace {

std::string bits_key(const Bits& b) {
    std::string s;
    boost::to_string(b, s);
    return s;
}

}  // namespace

std::vector<SubgroupClass> subgroup_classes(const CayleyGroup& g, size_t bound) {
    const int n = g.order();
    if (static_cast<size_t>(n) > bound) throw EnumerationBoundExceeded(static_cast<size_t>(n));
    std::vector<SubgroupClass> classes;
    std::unordered_set<Bits> seen;

    auto register_class = [&](const Bits& u, std::vector<int> gens) {
        std::unordered_set<Bits> conj;
        for (int x = 0; x < n; ++x) {
            Bits c = g.conjugate(u, x);
            conj.insert(c);
        }
        for (const auto& c : conj) seen.insert(c);
        SubgroupClass sc;
        sc.rep = u;
        sc.gens = std::move(gens);
        sc.order = static_cast<int>(u.count());
        sc.num_conjugates = static_cast<int>(conj.size());
        sc.normal = conj.size() == 1;
        classes.push_back(std::move(sc));
    };

    register_class(g.closure({}), {});
    for (size_t idx = 0; idx < classes.size(); ++idx) {
        const Bits s = classes[idx].rep;
        const std::vector<int> sgens = classes[idx].gens;
        std::vector<int> norm = CayleyGroup::elements_of(g.normalizer(s));
        Bits done = s;
        for (int x = 0; x < n; ++x) {
            if (done.test(static_cast<size_t>(x))) continue;
            // <S, x> and <S, y x y^-1 s> are conjugate for y in N(S), s in S.
            for (int y : norm) done.set(static_cast<size_t>(g.conj(y, x)));
            Bits u = g.join(s, sgens, x);
            if (seen.count(u)) continue;
            std::vector<int> gens = sgens;
            gens.push_back(x);
            register_class(u, std::move(gens));
        }
    }
    // Reproducible order: by size, then lexicographically smallest conjugate.
    std::vector<std::string> keys(classes.size());
    for (size_t k = 0; k < classes.size(); ++k) {
        std::string best;
        for (int x = 0; x < n; ++x) {
            Bits c = g.conjugate(classes[k].rep, x);
            std::string ks = bits_key(c);
            if (best.empty() || ks < best) {
                best = ks;
                classes[k].rep = c;
            }
        }
        keys[k] = best;
    }
    // The representative may have moved to a conjugate; regenerate generators.
    for (auto& c : classes) c.gens = g.small_generating_set(c.rep);
    std::vector<size_t> perm(classes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
        if (classes[a].order != classes[b].order) return classes[a].order < classes[b].order;
        return keys[a] < keys[b];
    });
    std::vector<SubgroupClass> out;
    for (size_t k : perm) out.push_back(std::move(classes[k]));
    return out;
}

// ---------------------------------------------------------------------------
// Fingerprints

bool GroupFingerprint::operator==(const GroupFingerprint& b) const {
    return order == b.order && exponent == b.exponent && abelian_invariants == b.abelian_invariants &&
           class_sizes == b.class_sizes && order_histogram == b.order_histogram &&
           defining_char_norm == b.defining_char_norm;
}

nlohmann::json GroupFingerprint::to_json() const {
    nlohmann::json j;
    j["order"] = order;
    j["exponent"] = exponent;
    j["abelian_invariants"] = abelian_invariants;
    j["class_sizes"] = class_sizes;
    nlohmann::json h = nlohmann::json::object();
    for (auto [o, c] : order_histogram) h[std::to_string(o)] = c;
    j["order_histogram"] = h;
    if (defining_char_norm) j["defining_char_norm"] = *defining_char_norm;
    return j;
}

namespace {

std::vector<int> prime_factors(int n) {
    std::vector<int> p;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) p.push_back(n);
    return p;
}

}  // namespace

GroupFingerprint fingerprint(const CayleyGroup& g, const Bits& s) {
    GroupFingerprint f;
    std::vector<int> el = CayleyGroup::elements_of(s);
    f.order = static_cast<int>(el.size());
    f.exponent = 1;
    for (int a : el) {
        int o = g.elem_order(a);
        f.exponent = std::lcm(f.exponent, o);
        f.order_histogram[o]++;
    }
    auto cs = g.class_sizes(s);
    std::map<int, int> size_count;
    for (int a : el) size_count[cs[static_cast<size_t>(a)]]++;
    for (auto [sz, cnt] : size_count)
        for (int k = 0; k < cnt / sz; ++k) f.class_sizes.push_back(sz);

    Bits d = g.derived_subgroup(s);
    int q = f.order / static_cast<int>(d.count());
    for (int p : prime_factors(q)) {
        // |A[p^k]| from the number of elements whose p^k-th power lies in G'.
        std::vector<long> sizes{1};
        long pk = 1;
        while (true) {
            pk *= p;
            long cnt = 0;
            for (int a : el) cnt += d.test(static_cast<size_t>(g.power(a, pk)));
            long ak = cnt / static_cast<long>(d.count());
            if (ak == sizes.back()) break;
            sizes.push_back(ak);
        }
        // number of cyclic factors of order >= p^k is log_p(|A[p^k]| / |A[p^(k-1)]|)
        std::vector<int> atleast;
        for (size_t k = 1; k < sizes.size(); ++k) {
            long r = sizes[k] / sizes[k - 1];
            int e = 0;
            while (r > 1) {
                r /= p;
                ++e;
            }
            atleast.push_back(e);
        }
        for (size_t k = 0; k < atleast.size(); ++k) {
            int next = k + 1 < atleast.size() ? atleast[k + 1] : 0;
            int pw = 1;
            for (size_t t = 0; t <= k; ++t) pw *= p;
            for (int c = 0; c < atleast[k] - next; ++c) f.abelian_invariants.push_back(pw);
        }
    }
    std::sort(f.abelian_invariants.begin(), f.abelian_invariants.end());
    return f;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

struct IsoSearch {
    const CayleyGroup& g1;
    const CayleyGroup& g2;
    const std::vector<int>* lab1;
    const std::vector<int>* lab2;
    std::vector<int> gens;
    std::vector<std::vector<int>> cand;
    std::vector<int> images;
    std::vector<int> phi;

    bool extend(size_t upto) {
        phi.assign(static_cast<size_t>(g1.order()), -1);
        Bits used(static_cast<size_t>(g2.order()));
        phi[0] = 0;
        used.set(0);
        std::vector<int> list{0};
        for (size_t q = 0; q < list.size(); ++q) {
            int x = list[q];
            for (size_t j = 0; j <= upto; ++j) {
                int y = g1.mul(x, gens[j]);
                int iy = g2.mul(phi[static_cast<size_t>(x)], images[j]);
                int& cur = phi[static_cast<size_t>(y)];
                if (cur >= 0) {
                    if (cur != iy) return false;
                    continue;
                }
                if (used.test(static_cast<size_t>(iy))) return false;
                if (lab1 && (*lab1)[static_cast<size_t>(y)] != (*lab2)[static_cast<size_t>(iy)]) return false;
                cur = iy;
                used.set(static_cast<size_t>(iy));
                list.push_back(y);
            }
        }
        return true;
    }

    bool search(size_t i) {
        if (i == gens.size()) return true;
        for (int c : cand[i]) {
            images[i] = c;
            if (extend(i) && search(i + 1)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& g1, const Bits& s1, const CayleyGroup& g2,
                                                 const Bits& s2, const std::vector<int>* lab1,
                                                 const std::vector<int>* lab2) {
    if (s1.count() != s2.count()) return std::nullopt;
    if ((lab1 == nullptr) != (lab2 == nullptr)) throw std::invalid_argument("labels must be given for both groups");
    std::vector<int> e1 = CayleyGroup::elements_of(s1), e2 = CayleyGroup::elements_of(s2);
    auto cs1 = g1.class_sizes(s1), cs2 = g2.class_sizes(s2);
    // Element invariant: order, class size in the subgroup, labels of small powers.
    auto inv = [](const CayleyGroup& g, const std::vector<int>& cs, const std::vector<int>* lab, int a) {
        std::vector<int> v{g.elem_order(a), cs[static_cast<size_t>(a)]};
        if (lab)
            for (int k = 1; k <= 3; ++k) v.push_back((*lab)[static_cast<size_t>(g.power(a, k))]);
        return v;
    };
    std::map<std::vector<int>, std::vector<int>> by1, by2;
    for (int a : e1) by1[inv(g1, cs1, lab1, a)].push_back(a);
    for (int a : e2) by2[inv(g2, cs2, lab2, a)].push_back(a);
    if (by1.size() != by2.size()) return std::nullopt;
    for (const auto& [k, v] : by1) {
        auto it = by2.find(k);
        if (it == by2.end() || it->second.size() != v.size()) return std::nullopt;
    }
    if (lab1 && (*lab1)[0] != (*lab2)[0]) return std::nullopt;

    IsoSearch s{g1, g2, lab1, lab2, {}, {}, {}, {}};
    // Generators: prefer elements whose invariant bucket is small.
    std::vector<int> pool = e1;
    std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
        size_t na = by1[inv(g1, cs1, lab1, a)].size(), nb = by1[inv(g1, cs1, lab1, b)].size();
        if (g1.elem_order(a) != g1.elem_order(b)) return g1.elem_order(a) > g1.elem_order(b);
        return na < nb;
    });
    Bits cur = g1.closure({});
    for (int x : pool) {
        if (cur.count() == s1.count()) break;
        if (cur.test(static_cast<size_t>(x))) continue;
        s.gens.push_back(x);
        cur = g1.closure(s.gens);
    }
    for (int x : s.gens) s.cand.push_back(by2[inv(g1, cs1, lab1, x)]);
    s.images.assign(s.gens.size(), 0);
    if (s.gens.empty()) {
        std::vector<int> phi(static_cast<size_t>(g1.order()), -1);
        phi[0] = 0;
        return phi;
    }
    if (!s.search(0)) return std::nullopt;
    return s.phi;
}

// ---------------------------------------------------------------------------
// Matrix groups

GroupElement projective_canonical(const GroupElement& e, int m) {
    if (m <= 1) return e;
    const auto& a = e.mat.entries();
    size_t first = 0;
    while (first < a.size() && a[first].is_zero()) ++first;
    if (first == a.size()) return e;
    const double two_pi = 2 * M_PI, step = two_pi / m;
    auto arg01 = [&](const CycNum& x) {
        double t = std::arg(x.to_complex());
        if (t < 0) t += two_pi;
        return t;
    };
    auto positive_real = [](const CycNum& x) { return x.is_real() && x.to_complex().real() > 0; };
    double t = arg01(a[first]);
    long k0 = static_cast<long>(std::floor(t / step));
    for (long dk : {0L, 1L, -1L}) {
        long k = ((k0 + dk) % m + m) % m;
        CycNum z = CycNum::zeta(m, -k);
        CycNum y = a[first] * z;
        double ty = arg01(y);
        bool ok;
        if (positive_real(y))
            ok = true;
        else if (ty < 1e-9 || ty > two_pi - 1e-9)
            ok = false;  // near zero but not exactly real positive
        else if (std::abs(ty - step) < 1e-9)
            ok = !positive_real(y * CycNum::zeta(m, -1));
        else
            ok = ty < step;
        if (ok) return GroupElement(e.mat * z, e.antilinear);
    }
    throw std::logic_error("projective canonicalization failed");
}

bool FiniteMatrixGroup::has_antilinear() const {
    for (const auto& e : elements)
        if (e.antilinear) return true;
    return false;
}

GroupElement FiniteMatrixGroup::canonical(const GroupElement& e) const {
    return projective_scalars ? projective_canonical(e, *projective_scalars) : e;
}

int FiniteMatrixGroup::index_of(const GroupElement& e) const {
    if (e.mat.dim() != dim) return -1;
    auto it = index_.find(canonical(e).key());
    return it == index_.end() ? -1 : it->second;
}

nlohmann::json FiniteMatrixGroup::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["dim"] = dim;
    j["projective_scalars"] = projective_scalars ? nlohmann::json(*projective_scalars) : nlohmann::json(nullptr);
    nlohmann::json gens = nlohmann::json::array(), anti = nlohmann::json::array();
    bool any_anti = false;
    for (const auto& g : generators) {
        gens.push_back(g.mat.to_json());
        anti.push_back(g.antilinear);
        any_anti = any_anti || g.antilinear;
    }
    j["generators"] = gens;
    if (any_anti) j["antilinear"] = anti;
    return j;
}

FiniteMatrixGroup FiniteMatrixGroup::from_json(const nlohmann::json& j, size_t order_cap) {
    std::vector<GroupElement> gens;
    const auto& gj = j.at("generators");
    for (size_t k = 0; k < gj.size(); ++k) {
        bool anti = j.contains("antilinear") && j["antilinear"].at(k).get<bool>();
        gens.emplace_back(ExactMatrix::from_json(gj[k]), anti);
    }
    std::optional<int> m;
    if (j.contains("projective_scalars") && !j["projective_scalars"].is_null()) m = j["projective_scalars"].get<int>();
    FiniteMatrixGroup g = generate_closure(gens, m, order_cap, j.value("dim", -1));
    g.name = j.value("name", "");
    return g;
}

FiniteMatrixGroup generate_closure(const std::vector<GroupElement>& generators, std::optional<int> projective_scalars,
                                   size_t order_cap, int dim) {
    if (dim < 0) dim = generators.empty() ? 1 : generators.front().mat.dim();
    for (const auto& g : generators)
        if (g.mat.dim() != dim) throw DimensionMismatch("generators must share one dimension");
    FiniteMatrixGroup G;
    G.dim = dim;
    G.projective_scalars = projective_scalars;
    for (const auto& g : generators) G.generators.push_back(G.canonical(g));
    G.elements.push_back(G.canonical(GroupElement(ExactMatrix::identity(dim))));
    G.index_[G.elements[0].key()] = 0;
    G.parent_.push_back(-1);
    G.parent_gen_.push_back(-1);
    const size_t k = G.generators.size();
    std::vector<int32_t> right;  // right[x*k + j] = x * gen_j
    for (size_t q = 0; q < G.elements.size(); ++q)
        for (size_t j = 0; j < k; ++j) {
            GroupElement y = G.canonical(G.elements[q] * G.generators[j]);
            std::string key = y.key();
            auto it = G.index_.find(key);
            int idx;
            if (it == G.index_.end()) {
                idx = static_cast<int>(G.elements.size());
                if (G.elements.size() + 1 > order_cap) throw OrderCapExceeded(order_cap);
                G.index_.emplace(std::move(key), idx);
                G.elements.push_back(std::move(y));
                G.parent_.push_back(static_cast<int>(q));
                G.parent_gen_.push_back(static_cast<int>(j));
            } else {
                idx = it->second;
            }
            right.push_back(idx);
        }
    const size_t n = G.elements.size();
    std::vector<int32_t> table(n * n);
    for (size_t x = 0; x < n; ++x) {
        table[x * n] = static_cast<int32_t>(x);
        for (size_t y = 1; y < n; ++y) {
            int xp = table[x * n + static_cast<size_t>(G.parent_[y])];
            table[x * n + y] = right[static_cast<size_t>(xp) * k + static_cast<size_t>(G.parent_gen_[y])];
        }
    }
    G.table_ = std::make_shared<CayleyGroup>(static_cast<int>(n), std::move(table));
    return G;
}

FiniteMatrixGroup generate_closure(const std::vector<ExactMatrix>& generators, std::optional<int> projective_scalars,
                                   size_t order_cap, int dim) {
    std::vector<GroupElement> g(generators.begin(), generators.end());
    return generate_closure(g, projective_scalars, order_cap, dim);
}

int scalar_subgroup_order(const std::vector<GroupElement>& generators, size_t order_cap) {
    FiniteMatrixGroup g = generate_closure(generators, std::nullopt, order_cap);
    int m = 0;
    for (const auto& e : g.elements) m += !e.antilinear && e.mat.is_scalar();
    return m;
}

FiniteMatrixGroup subgroup_of(const FiniteMatrixGroup& g, const Bits& s, const std::string& name) {
    const CayleyGroup& t = g.table();
    if (!t.is_subgroup(s)) throw std::invalid_argument("subgroup_of: not a subgroup");
    FiniteMatrixGroup h;
    h.dim = g.dim;
    h.projective_scalars = g.projective_scalars;
    h.name = name;
    std::vector<int> el = CayleyGroup::elements_of(s);  // starts with 0 = identity
    std::vector<int> pos(static_cast<size_t>(t.order()), -1);
    for (size_t k = 0; k < el.size(); ++k) {
        pos[static_cast<size_t>(el[k])] = static_cast<int>(k);
        h.elements.push_back(g.elements[static_cast<size_t>(el[k])]);
        h.index_[h.elements.back().key()] = static_cast<int>(k);
    }
    for (int x : t.small_generating_set(s)) h.generators.push_back(g.elements[static_cast<size_t>(x)]);
    const size_t n = el.size();
    std::vector<int32_t> table(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) table[a * n + b] = pos[static_cast<size_t>(t.mul(el[a], el[b]))];
    h.table_ = std::make_shared<CayleyGroup>(static_cast<int>(n), std::move(table));
    return h;
}

Bits bits_of(const FiniteMatrixGroup& ambient, const FiniteMatrixGroup& h) {
    Bits b(ambient.order());
    for (const auto& e : h.elements) {
        int i = ambient.index_of(e);
        if (i < 0) throw std::invalid_argument("group is not contained in the ambient group");
        b.set(static_cast<size_t>(i));
    }
    return b;
}

std::vector<FiniteMatrixGroup> subgroup_classes(const FiniteMatrixGroup& g, size_t bound) {
    std::vector<FiniteMatrixGroup> out;
    for (const auto& c : subgroup_classes(g.table(), bound)) out.push_back(subgroup_of(g, c.rep));
    return out;
}

GroupFingerprint group_fingerprint(const FiniteMatrixGroup& g) {
    GroupFingerprint f = fingerprint(g.table(), g.table().all());
    if (!g.projective_scalars && !g.has_antilinear()) {
        CycNum s;
        for (const auto& e : g.elements) s += e.mat.trace().norm2();
        s /= CycNum(static_cast<long>(g.order()));
        auto r = recognize_rational_integer(s);
        if (r.is_integer) f.defining_char_norm = static_cast<int>(*r.value);
    }
    return f;
}

FiniteMatrixGroup wreath_c2_s3() {
    ExactMatrix a = ExactMatrix::diag({-1, 1, 1});
    ExactMatrix t(3), s(3);
    t(0, 1) = 1;
    t(1, 0) = 1;
    t(2, 2) = 1;
    s(1, 0) = 1;
    s(2, 1) = 1;
    s(0, 2) = 1;
    FiniteMatrixGroup g = generate_closure(std::vector<ExactMatrix>{a, t, s});
    g.name = "C2 wr S3";
    return g;
}

}  // namespace stg
