#include "stg/ambient.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace stg {

struct ValueInterner::Impl {
    mutable std::mutex mu;
    std::unordered_map<std::string, int> ids;
    std::vector<CycNum> values;
    std::vector<int> conj;  // -1 until computed
};

ValueInterner& ValueInterner::global() {
    static ValueInterner v;
    return v;
}

ValueInterner::ValueInterner() : impl_(std::make_shared<Impl>()) {}

ValueInterner::Impl& ValueInterner::impl() { return *impl_; }

const ValueInterner::Impl& ValueInterner::impl() const { return *impl_; }

int ValueInterner::id(const CycNum& x) {
    Impl& m = impl();
    std::lock_guard<std::mutex> lock(m.mu);
    auto [it, fresh] = m.ids.emplace(x.key(), static_cast<int>(m.values.size()));
    if (fresh) {
        m.values.push_back(x);
        m.conj.push_back(-1);
    }
    return it->second;
}

int ValueInterner::conj_id(int id) {
    Impl& m = impl();
    CycNum c;
    {
        std::lock_guard<std::mutex> lock(m.mu);
        if (m.conj.at(static_cast<size_t>(id)) >= 0) return m.conj[static_cast<size_t>(id)];
        c = m.values[static_cast<size_t>(id)].conj();
    }
    int cid = this->id(c);
    std::lock_guard<std::mutex> lock(m.mu);
    m.conj[static_cast<size_t>(id)] = cid;
    return cid;
}

CycNum ValueInterner::value(int id) const {
    const Impl& m = impl();
    std::lock_guard<std::mutex> lock(m.mu);
    return m.values.at(static_cast<size_t>(id));
}

GroupElement projective_normalize(const GroupElement& e) {
    const int n = e.mat.dim();
    for (int k = 0; k < n * n; ++k) {
        const CycNum& x = e.mat(k / n, k % n);
        if (!x.is_zero()) return GroupElement(e.mat * x.inverse(), e.antilinear);
    }
    throw SingularMatrix();
}

// ---------------------------------------------------------------------------

namespace {

// det(A)^(-1/3) chosen in a cyclotomic field; A must have root-of-unity determinant.
CycNum inverse_cube_root_of_det(const ExactMatrix& a) {
    auto r = a.det().root_of_unity();
    if (!r) throw std::invalid_argument("lift: generator determinant is not a root of unity");
    return CycNum::zeta(3 * r->first, -r->second);
}

}  // namespace

ProjectiveLift::ProjectiveLift(const FiniteMatrixGroup& g) {
    if (g.dim != 3) throw DimensionMismatch("ProjectiveLift expects a 3x3 group");
    const CayleyGroup& t = g.table();
    Bits unit(static_cast<size_t>(t.order()));
    int anti = -1;
    for (size_t k = 0; k < g.order(); ++k) {
        if (!g.elements[k].antilinear)
            unit.set(k);
        else if (anti < 0)
            anti = static_cast<int>(k);
    }

    std::vector<ExactMatrix> gens{ExactMatrix::scalar(3, CycNum::zeta(3))};
    for (int x : t.small_generating_set(unit)) {
        const ExactMatrix& a = g.elements[static_cast<size_t>(x)].mat;
        gens.push_back(a * inverse_cube_root_of_det(a));
    }
    unitary_ = std::make_shared<FiniteMatrixGroup>(generate_closure(gens, std::nullopt, 50000));
    const FiniteMatrixGroup& k0 = *unitary_;
    const CayleyGroup& t0 = k0.table();
    n0_ = t0.order();

    int n = n0_;
    std::vector<int32_t> table;
    ExactMatrix tm;
    if (anti < 0) {
        table.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table[static_cast<size_t>(a * n + b)] = t0.mul(a, b);
    } else {
        tm = g.elements[static_cast<size_t>(anti)].mat;
        ExactMatrix tinv = tm.inverse();
        // alpha(k) = T conj(k) T^-1 on generators, extended along BFS words
        std::vector<int> agen;
        for (const auto& gen : k0.generators) {
            int y = k0.index_of(GroupElement(tm * gen.mat.conj() * tinv));
            if (y < 0) throw std::logic_error("lift: antiunitary element does not normalize the unitary lift");
            agen.push_back(y);
        }
        std::vector<int> alpha(static_cast<size_t>(n), 0);
        const auto& par = k0.word_parent();
        const auto& pg = k0.word_parent_gen();
        for (int x = 1; x < n; ++x)
            alpha[static_cast<size_t>(x)] =
                t0.mul(alpha[static_cast<size_t>(par[static_cast<size_t>(x)])], agen[static_cast<size_t>(pg[static_cast<size_t>(x)])]);
        // s0: the lift of T conj(T) with positive real ratio
        ExactMatrix tt = tm * tm.conj();
        int s0 = -1;
        for (int x = 0; x < n && s0 < 0; ++x) {
            const ExactMatrix& xm = k0.elements[static_cast<size_t>(x)].mat;
            int p = 0;
            while (xm(p / 3, p % 3).is_zero()) ++p;
            CycNum r = tt(p / 3, p % 3) / xm(p / 3, p % 3);
            if (!r.is_rational() || r.rational_value() <= 0) continue;
            if (xm * r == tt) s0 = x;
        }
        if (s0 < 0) throw std::logic_error("lift: T conj(T) is not in the unitary lift");
        if (alpha[static_cast<size_t>(s0)] != s0) throw std::logic_error("lift: inconsistent antiunitary square");
        for (int x = 0; x < n; ++x)
            if (alpha[static_cast<size_t>(alpha[static_cast<size_t>(x)])] != t0.conj(s0, x))
                throw std::logic_error("lift: alpha^2 differs from conjugation by the square");

        const int N = 2 * n;
        table.resize(static_cast<size_t>(N) * static_cast<size_t>(N));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                int x = a % n, ea = a / n, y = b % n, eb = b / n;
                int r;
                if (ea == 0)
                    r = t0.mul(x, y) + eb * n;
                else if (eb == 0)
                    r = t0.mul(x, alpha[static_cast<size_t>(y)]) + n;
                else
                    r = t0.mul(t0.mul(x, alpha[static_cast<size_t>(y)]), s0);
                table[static_cast<size_t>(a * N + b)] = r;
            }
        n = N;
    }
    table_ = CayleyGroup(n, std::move(table));

    auto& vi = ValueInterner::global();
    for (int x = 0; x < n; ++x) {
        if (x < n0_) {
            int id = vi.id(k0.elements[static_cast<size_t>(x)].mat.trace());
            labels_.push_back(id);
            conj_labels_.push_back(vi.conj_id(id));
        } else {
            labels_.push_back(-1);
            conj_labels_.push_back(-1);
        }
    }

    // projective classes shared by source and lift
    std::unordered_map<std::string, int> cls;
    auto class_of = [&cls](const GroupElement& e, bool create) {
        std::string key = projective_normalize(e).key();
        auto it = cls.find(key);
        if (it != cls.end()) return it->second;
        if (!create) return -1;
        int id = static_cast<int>(cls.size());
        cls.emplace(std::move(key), id);
        return id;
    };
    for (const auto& e : g.elements) proj_of_source_.push_back(class_of(e, true));
    for (int x = 0; x < n; ++x) {
        const ExactMatrix& m = k0.elements[static_cast<size_t>(x % n0_)].mat;
        GroupElement e = x < n0_ ? GroupElement(m) : GroupElement(m * tm, true);
        int c = class_of(e, false);
        if (c < 0) throw std::logic_error("lift: lifted element outside the source group");
        proj_of_lift_.push_back(c);
    }
}

Bits ProjectiveLift::lift_of(const Bits& sub) const {
    std::vector<char> in(proj_of_source_.size(), 0);
    for (size_t k = sub.find_first(); k != Bits::npos; k = sub.find_next(k))
        in[static_cast<size_t>(proj_of_source_[k])] = 1;
    Bits out(static_cast<size_t>(order()));
    for (size_t x = 0; x < proj_of_lift_.size(); ++x)
        if (in[static_cast<size_t>(proj_of_lift_[x])]) out.set(x);
    return out;
}

CycNum ProjectiveLift::trace(int x) const { return ValueInterner::global().value(labels_.at(static_cast<size_t>(x))); }

bool lifts_conjugate(const ProjectiveLift& l1, const Bits& s1, const ProjectiveLift& l2, const Bits& s2,
                     bool allow_conj) {
    if (s1.count() != s2.count()) return false;
    if (find_isomorphism(l1.table(), s1, l2.table(), s2, &l1.labels(), &l2.labels())) return true;
    return allow_conj && find_isomorphism(l1.table(), s1, l2.table(), s2, &l1.labels(), &l2.conj_labels());
}

// ---------------------------------------------------------------------------

AmbientModel AmbientModel::finite(FiniteMatrixGroup g) {
    return {AmbientKind::Finite, std::make_shared<const FiniteMatrixGroup>(std::move(g))};
}

AmbientModel AmbientModel::wreath() { return finite(wreath_c2_s3()); }

bool ambient_subgroup_conjugate(const FiniteMatrixGroup& h1, const FiniteMatrixGroup& h2, const AmbientModel& amb) {
    switch (amb.kind) {
        case AmbientKind::Finite: {
            if (!amb.group) throw std::invalid_argument("finite ambient model without a group");
            if (h1.order() != h2.order()) return false;
            const FiniteMatrixGroup& g = *amb.group;
            Bits b1 = bits_of(g, h1), b2 = bits_of(g, h2);
            for (int x = 0; x < g.table().order(); ++x)
                if (g.table().conjugate(b1, x) == b2) return true;
            return false;
        }
        case AmbientKind::SO3: {
            if (h1.dim != 3 || h2.dim != 3) throw DimensionMismatch("SO3 ambient expects 3x3 groups");
            if (h1.order() != h2.order()) return false;
            auto& vi = ValueInterner::global();
            std::vector<int> a, b;
            for (const auto& e : h1.elements) a.push_back(vi.id(e.mat.trace()));
            for (const auto& e : h2.elements) b.push_back(vi.id(e.mat.trace()));
            return find_isomorphism(h1.table(), h1.table().all(), h2.table(), h2.table().all(), &a, &b).has_value();
        }
        case AmbientKind::PSU3:
        case AmbientKind::PSU3xC2: {
            bool c2 = amb.kind == AmbientKind::PSU3xC2;
            if (!c2 && (h1.has_antilinear() || h2.has_antilinear()))
                throw std::invalid_argument("PSU3 ambient: antiunitary elements need the PSU3 x| C2 model");
            ProjectiveLift l1(h1), l2(h2);
            return lifts_conjugate(l1, l1.table().all(), l2, l2.table().all(), c2);
        }
    }
    return false;
}

}  // namespace stg
