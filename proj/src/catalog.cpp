#include "stg/catalog.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace stg {

namespace {

std::vector<int> coords_of(const std::vector<int>& planes) {
    std::vector<int> idx;
    for (int p : planes) idx.push_back(p);
    for (int p : planes) idx.push_back(p + 3);
    return idx;
}

CycNum inv_sqrt2() { return CycNum::sqrt_rational(mpq_class(1, 2)); }

// Real rotation by pi/4 in the (e_p, e_q) coordinates of C^3.
ExactMatrix rotation3(int p, int q) {
    ExactMatrix r = ExactMatrix::identity(3);
    CycNum c = inv_sqrt2();
    r(p, p) = c;
    r(p, q) = -c;
    r(q, p) = c;
    r(q, q) = c;
    return r;
}

ExactMatrix perm3_cycle() {
    ExactMatrix m(3);
    m(1, 0) = 1;
    m(2, 1) = 1;
    m(0, 2) = 1;
    return m;
}

void add_su2_generators(const std::vector<int>& planes, std::vector<ExactMatrix>& out) {
    CycNum i = CycNum::i(), h = inv_sqrt2();
    out.push_back(plane_block(planes, i, 0, 0, -i));
    out.push_back(plane_block(planes, 0, 1, -1, 0));
    out.push_back(plane_block(planes, h, h, -h, h));
}

std::vector<ExactMatrix> factor_generators(const ComponentFactor& f) {
    std::vector<ExactMatrix> out;
    switch (f.kind) {
        case FactorKind::U1: {
            CycNum z = CycNum::zeta(7);
            out.push_back(plane_block(f.planes, z, 0, 0, z.conj()));
            break;
        }
        case FactorKind::SU2:
            add_su2_generators(f.planes, out);
            break;
        case FactorKind::USp4:
        case FactorKind::USp6:
            for (int p : f.planes) add_su2_generators({p}, out);
            for (size_t k = 0; k + 1 < f.planes.size(); ++k)
                out.push_back(unitary_embedding(rotation3(f.planes[k], f.planes[k + 1])));
            break;
        case FactorKind::U3:
        case FactorKind::SU3: {
            CycNum z = CycNum::zeta(7);
            out.push_back(unitary_embedding(ExactMatrix::diag({z, z.pow(2), z.pow(4)})));
            out.push_back(unitary_embedding(perm3_cycle()));
            out.push_back(unitary_embedding(rotation3(0, 1)));
            break;
        }
        case FactorKind::SO3: {
            ExactMatrix quarter = ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
            out.push_back(unitary_embedding(quarter));
            out.push_back(unitary_embedding(perm3_cycle()));
            out.push_back(unitary_embedding(rotation3(0, 1)));
            break;
        }
    }
    return out;
}

// Torus columns contributed by one factor.
std::vector<std::vector<int>> factor_torus(const ComponentFactor& f) {
    std::vector<std::vector<int>> cols;
    auto col_on = [](const std::vector<int>& planes) {
        std::vector<int> c(6, 0);
        for (int p : planes) {
            c[static_cast<size_t>(p)] = 1;
            c[static_cast<size_t>(p + 3)] = -1;
        }
        return c;
    };
    switch (f.kind) {
        case FactorKind::U1:
        case FactorKind::SU2:
            cols.push_back(col_on(f.planes));
            break;
        case FactorKind::USp4:
        case FactorKind::USp6:
        case FactorKind::U3:
            for (int p : f.planes) cols.push_back(col_on({p}));
            break;
        case FactorKind::SU3:
            cols.push_back({1, 0, -1, -1, 0, 1});
            cols.push_back({0, 1, -1, 0, -1, 1});
            break;
        case FactorKind::SO3:
            cols.push_back({1, 0, -1, -1, 0, 1});
            break;
    }
    return cols;
}

bool block_invariant(const ExactMatrix& m, const std::vector<int>& idx) {
    for (int j : idx)
        for (int i = 0; i < 6; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end() && !m(i, j).is_zero()) return false;
    return true;
}

bool factor_contains(const ComponentFactor& f, const ExactMatrix& m) {
    const auto& s = f.planes;
    switch (f.kind) {
        case FactorKind::U1:
        case FactorKind::SU2: {
            const int p0 = s.front();
            CycNum a = m(p0, p0), b = m(p0, p0 + 3), c = m(p0 + 3, p0), d = m(p0 + 3, p0 + 3);
            if (f.kind == FactorKind::U1 && (!b.is_zero() || !c.is_zero())) return false;
            for (int p : s)
                for (int q : s) {
                    bool diag = p == q;
                    if (m(p, q) != (diag ? a : CycNum())) return false;
                    if (m(p, q + 3) != (diag ? b : CycNum())) return false;
                    if (m(p + 3, q) != (diag ? c : CycNum())) return false;
                    if (m(p + 3, q + 3) != (diag ? d : CycNum())) return false;
                }
            return true;
        }
        case FactorKind::USp4:
        case FactorKind::USp6:
            return true;
        case FactorKind::U3:
        case FactorKind::SU3:
        case FactorKind::SO3: {
            ExactMatrix a(3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (!m(i, j + 3).is_zero() || !m(i + 3, j).is_zero()) return false;
                    a(i, j) = m(i, j);
                }
            if (f.kind == FactorKind::U3) return true;
            if (!a.det().is_one()) return false;
            if (f.kind == FactorKind::SO3) return a == a.conj();
            return true;
        }
    }
    return false;
}

ComponentFactor fac(FactorKind k, std::vector<int> planes) { return ComponentFactor{k, std::move(planes)}; }

ConnectedComponentDescriptor make(std::string id, std::string name, std::string type, std::string alg,
                                  std::string endo, std::string normalizer, std::string membership,
                                  std::vector<ComponentFactor> factors, int commutant) {
    ConnectedComponentDescriptor c;
    c.id = std::move(id);
    c.name = std::move(name);
    c.absolute_type = std::move(type);
    c.lie_algebra = std::move(alg);
    c.endomorphism_algebra = std::move(endo);
    c.normalizer_model = std::move(normalizer);
    c.membership = std::move(membership);
    c.factors = std::move(factors);
    c.commutant_dim = commutant;
    c.torus_weights.assign(6, {});
    for (const auto& f : c.factors) {
        c.dim += f.dim();
        for (const auto& col : factor_torus(f))
            for (size_t r = 0; r < 6; ++r) c.torus_weights[r].push_back(col[r]);
        for (auto& g : factor_generators(f)) c.test_generators.push_back(std::move(g));
    }
    return c;
}

std::vector<ConnectedComponentDescriptor> build_catalog() {
    using K = FactorKind;
    std::vector<ConnectedComponentDescriptor> v;
    v.push_back(make("USp6", "USp(6)", "A", "sp6", "R", "trivial", "usp6", {fac(K::USp6, {0, 1, 2})}, 1));
    v.push_back(make("U3", "U(3)", "B", "t1+sl3", "C", "C2 (complex conjugation)", "u3", {fac(K::U3, {0, 1, 2})}, 2));
    v.push_back(make("SU2xUSp4", "SU(2) x USp(4)", "C", "sl2+sp4", "R x R", "trivial", "su2_usp4",
                     {fac(K::SU2, {0}), fac(K::USp4, {1, 2})}, 2));
    v.push_back(make("U1xUSp4", "U(1) x USp(4)", "D", "t1+sp4", "C x R", "C2", "u1_usp4",
                     {fac(K::U1, {0}), fac(K::USp4, {1, 2})}, 3));
    v.push_back(make("SU2xSU2xSU2", "SU(2) x SU(2) x SU(2)", "E", "sl2+sl2+sl2", "R x R x R",
                     "S3 (factor permutations)", "su2_su2_su2", {fac(K::SU2, {0}), fac(K::SU2, {1}), fac(K::SU2, {2})},
                     3));
    v.push_back(make("U1xSU2xSU2", "U(1) x SU(2) x SU(2)", "F", "t1+sl2+sl2", "C x R x R", "C2 x C2 (C2 wr C2 on SU(2)^2)",
                     "u1_su2_su2", {fac(K::U1, {0}), fac(K::SU2, {1}), fac(K::SU2, {2})}, 4));
    v.push_back(make("U1xU1xSU2", "U(1) x U(1) x SU(2)", "G", "t2+sl2", "C x C x R", "C2 wr C2", "u1_u1_su2",
                     {fac(K::U1, {0}), fac(K::U1, {1}), fac(K::SU2, {2})}, 5));
    v.push_back(make("U1xU1xU1", "U(1) x U(1) x U(1)", "H", "t3", "C x C x C", "C2 wr S3", "u1_u1_u1",
                     {fac(K::U1, {0}), fac(K::U1, {1}), fac(K::U1, {2})}, 6));
    v.push_back(make("SU2xSU2_2", "SU(2) x SU(2)_2", "I", "sl2+sl2", "R x M2(R)",
                     "surface normalizer of SU(2)_2 (d = 3)", "su2_su2d2", {fac(K::SU2, {0}), fac(K::SU2, {1, 2})}, 5));
    v.push_back(make("U1xSU2_2", "U(1) x SU(2)_2", "J", "t1+sl2", "C x M2(R)",
                     "C2 x surface normalizer of SU(2)_2 (d = 3)", "u1_su2d2", {fac(K::U1, {0}), fac(K::SU2, {1, 2})}, 6));
    v.push_back(make("SU2xU1_2", "SU(2) x U(1)_2", "K", "t1+sl2", "R x M2(C)", "surface normalizer of U(1)_2 (d = 1)",
                     "su2_u1d2", {fac(K::SU2, {0}), fac(K::U1, {1, 2})}, 9));
    v.push_back(make("U1xU1_2", "U(1) x U(1)_2", "L", "t2", "C x M2(C)", "C2 x surface normalizer of U(1)_2 (d = 1)",
                     "u1_u1d2", {fac(K::U1, {0}), fac(K::U1, {1, 2})}, 10));
    v.push_back(make("SU2_3", "SU(2)_3", "M", "sl2", "M3(R)", "SO(3)", "su2d3", {fac(K::SU2, {0, 1, 2})}, 9));
    v.push_back(make("U1_3", "U(1)_3", "N", "t1", "M3(C)", "PSU(3) x| C2", "u1d3", {fac(K::U1, {0, 1, 2})}, 18));
    v.push_back(make("SO3", "SO(3)", "", "sl2", "", "O(3)", "so3", {fac(K::SO3, {0, 1, 2})}, 4));
    v.push_back(make("SU3", "SU(3)", "", "sl3", "", "U(3) x| C2", "su3", {fac(K::SU3, {0, 1, 2})}, 2));
    return v;
}

}  // namespace

int ComponentFactor::dim() const {
    switch (kind) {
        case FactorKind::U1: return 1;
        case FactorKind::SU2: return 3;
        case FactorKind::USp4: return 10;
        case FactorKind::USp6: return 21;
        case FactorKind::U3: return 9;
        case FactorKind::SU3: return 8;
        case FactorKind::SO3: return 3;
    }
    return 0;
}

int ComponentFactor::torus_rank() const { return static_cast<int>(factor_torus(*this).size()); }

std::string ComponentFactor::label() const {
    std::string base;
    switch (kind) {
        case FactorKind::U1: base = "U(1)"; break;
        case FactorKind::SU2: base = "SU(2)"; break;
        case FactorKind::USp4: return "USp(4)";
        case FactorKind::USp6: return "USp(6)";
        case FactorKind::U3: return "U(3)";
        case FactorKind::SU3: return "SU(3)";
        case FactorKind::SO3: return "SO(3)";
    }
    if (planes.size() > 1) base += "_" + std::to_string(planes.size());
    return base;
}

bool ConnectedComponentDescriptor::is_torus() const {
    return std::all_of(factors.begin(), factors.end(), [](const ComponentFactor& f) { return f.kind == FactorKind::U1; });
}

bool ConnectedComponentDescriptor::exact_average_supported() const {
    return std::all_of(factors.begin(), factors.end(), [](const ComponentFactor& f) {
        return f.kind == FactorKind::U1 || f.kind == FactorKind::SU2;
    });
}

bool ConnectedComponentDescriptor::contains(const ExactMatrix& m) const {
    if (m.dim() != 6 || !check_usp_membership(m)) return false;
    for (const auto& f : factors)
        if (!block_invariant(m, coords_of(f.planes)) || !factor_contains(f, m)) return false;
    return true;
}

ExactMatrix ConnectedComponentDescriptor::torus_element(const std::vector<long>& k, long n) const {
    if (static_cast<int>(k.size()) != torus_rank()) throw DimensionMismatch("torus_element: wrong number of exponents");
    std::vector<CycNum> d;
    for (const auto& row : torus_weights) {
        long e = 0;
        for (size_t c = 0; c < k.size(); ++c) e += row[c] * k[c];
        d.push_back(CycNum::zeta(n, e));
    }
    return ExactMatrix::diag(d);
}

nlohmann::json ConnectedComponentDescriptor::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["name"] = name;
    j["absolute_type"] = absolute_type.empty() ? nlohmann::json(nullptr) : nlohmann::json(absolute_type);
    j["lie_algebra"] = lie_algebra;
    j["endomorphism_algebra"] = endomorphism_algebra;
    j["normalizer_model"] = normalizer_model;
    j["membership"] = membership;
    j["dim"] = dim;
    j["commutant_dim"] = commutant_dim;
    std::vector<std::string> fl;
    for (const auto& f : factors) fl.push_back(f.label());
    j["factors"] = fl;
    j["torus_weights"] = torus_weights;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : test_generators) gens.push_back(g.to_json());
    j["test_generators"] = gens;
    return j;
}

const std::vector<ConnectedComponentDescriptor>& component_catalog() {
    static const std::vector<ConnectedComponentDescriptor> cat = build_catalog();
    return cat;
}

const ConnectedComponentDescriptor& component(const std::string& key) {
    for (const auto& c : component_catalog())
        if (c.id == key || (!c.absolute_type.empty() && c.absolute_type == key)) return c;
    throw UnknownComponent(key);
}

ExactMatrix plane_block(const std::vector<int>& planes, const CycNum& a, const CycNum& b, const CycNum& c,
                        const CycNum& d) {
    ExactMatrix m = ExactMatrix::identity(6);
    for (int p : planes) {
        m(p, p) = a;
        m(p, p + 3) = b;
        m(p + 3, p) = c;
        m(p + 3, p + 3) = d;
    }
    return m;
}

ExactMatrix unitary_embedding(const ExactMatrix& a) {
    if (a.dim() != 3) throw DimensionMismatch("unitary_embedding expects 3x3");
    return ExactMatrix::block_diag(a, a.conj());
}

const std::vector<Probe>& st4_probes() {
    static const std::vector<Probe> probes = [] {
        std::vector<Probe> v;
        const char* pn[] = {"1", "2", "3"};
        for (int p = 0; p < 3; ++p) {
            v.push_back({std::string("sign flip on plane ") + pn[p], plane_block({p}, -1, 0, 0, -1)});
            v.push_back({std::string("J on plane ") + pn[p], plane_block({p}, 0, 1, -1, 0)});
        }
        auto swap = [](int p, int q) {
            ExactMatrix s = ExactMatrix::identity(3);
            s(p, p) = 0;
            s(q, q) = 0;
            s(p, q) = 1;
            s(q, p) = 1;
            return unitary_embedding(s);
        };
        v.push_back({"swap planes 1 2", swap(0, 1)});
        v.push_back({"swap planes 2 3", swap(1, 2)});
        v.push_back({"swap planes 1 3", swap(0, 2)});
        v.push_back({"cycle planes", unitary_embedding(perm3_cycle())});
        v.push_back({"J", symplectic_form(6)});
        v.push_back({"-I", ExactMatrix::scalar(6, -1)});
        CycNum i = CycNum::i();
        v.push_back({"diag(iI, -iI)", plane_block({0, 1, 2}, i, 0, 0, -i)});
        return v;
    }();
    return probes;
}

HodgeReport hodge_circles(const ConnectedComponentDescriptor& c) {
    const int r = c.torus_rank();
    HodgeReport rep;
    // Solve W_e theta = eps over Q for each sign pattern eps; keep integral solutions.
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::vector<mpq_class>> a(3, std::vector<mpq_class>(static_cast<size_t>(r + 1)));
        for (size_t row = 0; row < 3; ++row) {
            for (size_t col = 0; col < static_cast<size_t>(r); ++col) a[row][col] = c.torus_weights[row][col];
            a[row][static_cast<size_t>(r)] = (mask >> row) & 1 ? -1 : 1;
        }
        std::vector<int> pivcol;
        size_t prow = 0;
        for (int col = 0; col < r && prow < 3; ++col) {
            size_t piv = prow;
            while (piv < 3 && a[piv][static_cast<size_t>(col)] == 0) ++piv;
            if (piv == 3) continue;
            std::swap(a[piv], a[prow]);
            mpq_class lead = a[prow][static_cast<size_t>(col)];
            for (auto& x : a[prow]) x /= lead;
            for (size_t o = 0; o < 3; ++o) {
                if (o == prow || a[o][static_cast<size_t>(col)] == 0) continue;
                mpq_class f = a[o][static_cast<size_t>(col)];
                for (size_t k = 0; k <= static_cast<size_t>(r); ++k) a[o][k] -= f * a[prow][k];
            }
            pivcol.push_back(col);
            ++prow;
        }
        bool ok = true;
        for (size_t o = prow; o < 3; ++o) ok = ok && a[o][static_cast<size_t>(r)] == 0;
        if (!ok || static_cast<int>(pivcol.size()) != r) continue;  // inconsistent, or a free direction
        Cocharacter th;
        th.weights.assign(static_cast<size_t>(r), 0);
        for (size_t k = 0; k < pivcol.size() && ok; ++k) {
            const mpq_class& x = a[k][static_cast<size_t>(r)];
            if (x.get_den() != 1) ok = false;
            else th.weights[static_cast<size_t>(pivcol[k])] = static_cast<int>(x.get_num().get_si());
        }
        if (!ok) continue;
        for (const auto& row : c.torus_weights) {
            int e = 0;
            for (int k = 0; k < r; ++k) e += row[static_cast<size_t>(k)] * th.weights[static_cast<size_t>(k)];
            th.exponents.push_back(e);
        }
        rep.circles.push_back(std::move(th));
    }
    if (rep.circles.empty()) return rep;
    if (c.is_torus()) {
        std::vector<CycVector> rows;
        for (const auto& th : rep.circles) rows.emplace_back(th.weights.begin(), th.weights.end());
        rep.generated_dim = static_cast<int>(matrix_rank(rows, static_cast<size_t>(r)));
        rep.dense = rep.generated_dim == r;
    } else {
        std::vector<ExactMatrix> seeds;
        for (const auto& th : rep.circles) {
            std::vector<CycNum> d;
            for (int e : th.exponents) d.push_back(CycNum::i() * CycNum(e));
            seeds.push_back(ExactMatrix::diag(d));
        }
        rep.generated_dim = lie_closure(seeds, c.test_generators);
        rep.dense = rep.generated_dim == c.dim;
    }
    return rep;
}

const ConnectedComponentDescriptor* match_candidate(const ConnectedCandidate& cand) {
    for (const auto& c : component_catalog())
        if (c.lie_algebra == cand.algebra.name && c.dim == cand.dim && c.commutant_dim == cand.commutant_dim) return &c;
    return nullptr;
}

}  // namespace stg
