#include "stg/classify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "stg_data.hpp"  // generated from data/*.json

namespace stg {

// ---------------------------------------------------------------------------
// Embedded catalogs

const std::string& embedded_data(const std::string& name) {
    static const std::map<std::string, std::string> files = {
        {"surface_groups", data::surface_groups},
        {"u13_maximal", data::u13_maximal},
        {"table5", data::table5},
    };
    auto it = files.find(name);
    if (it == files.end()) throw std::invalid_argument("no embedded catalog named " + name);
    return it->second;
}

std::string catalog_hash() {
    uint64_t h = 1469598103934665603ULL;
    for (const char* name : {"surface_groups", "u13_maximal", "table5"})
        for (unsigned char ch : embedded_data(name)) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<SurfaceCatalogEntry> SurfaceCatalog::with_dimension(int d) const {
    std::vector<SurfaceCatalogEntry> out;
    for (const auto& e : entries)
        if (e.d == d) out.push_back(e);
    return out;
}

const SurfaceCatalogEntry& SurfaceCatalog::find(const std::string& label) const {
    for (const auto& e : entries)
        if (e.label == label) return e;
    throw std::invalid_argument("surface catalog has no entry " + label);
}

SurfaceCatalog SurfaceCatalog::from_json(const nlohmann::json& j) {
    SurfaceCatalog c;
    for (const auto& e : j.at("entries")) {
        SurfaceCatalogEntry s;
        s.label = e.at("label").get<std::string>();
        s.d = e.at("d").get<int>();
        s.component_group = e.at("component_group").get<std::string>();
        s.component_order = e.at("component_order").get<int>();
        for (const auto& k : e.at("kernels")) s.kernels.emplace_back(k.at(0).get<std::string>(), k.at(1).get<int>());
        s.maximal = e.at("maximal").get<bool>();
        s.realizable = e.at("realizable").get<bool>();
        if (e.contains("wreath_words")) s.wreath_words = e["wreath_words"].get<std::vector<std::string>>();
        c.entries.push_back(std::move(s));
    }
    const auto& l = j.at("type_L");
    c.type_l_extensions = l.at("extensions").get<long>();
    c.type_l_maximal = l.at("maximal").get<int>();
    c.type_l_source = l.at("source").get<std::string>();
    return c;
}

const SurfaceCatalog& SurfaceCatalog::embedded() {
    static const SurfaceCatalog c = from_json(nlohmann::json::parse(embedded_data("surface_groups")));
    return c;
}

// ---------------------------------------------------------------------------
// Permutation models

CayleyGroup cayley_from_permutations(const std::vector<std::vector<int>>& gens, size_t order_cap) {
    size_t deg = 1;
    for (const auto& g : gens) deg = std::max(deg, g.size());
    auto widen = [deg](std::vector<int> p) {
        for (size_t k = p.size(); k < deg; ++k) p.push_back(static_cast<int>(k));
        return p;
    };
    std::vector<std::vector<int>> gw;
    for (const auto& g : gens) gw.push_back(widen(g));
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> els{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    // (p * q)(x) = p(q(x))
    auto compose = [deg](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(deg);
        for (size_t x = 0; x < deg; ++x) r[x] = p[static_cast<size_t>(q[x])];
        return r;
    };
    for (size_t k = 0; k < els.size(); ++k)
        for (const auto& g : gw) {
            auto y = compose(els[k], g);
            if (index.emplace(y, static_cast<int>(els.size())).second) {
                els.push_back(std::move(y));
                if (els.size() > order_cap) throw OrderCapExceeded(order_cap);
            }
        }
    const size_t n = els.size();
    std::vector<int32_t> table(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(els[a], els[b]));
    return CayleyGroup(static_cast<int>(n), std::move(table));
}

namespace {

using Perm = std::vector<int>;

Perm cycle_perm(int n) {
    Perm p(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) p[static_cast<size_t>(k)] = (k + 1) % n;
    return p;
}

// p on points, given as a list of cycles
Perm from_cycles(int deg, const std::vector<std::vector<int>>& cycles) {
    Perm p(static_cast<size_t>(deg));
    std::iota(p.begin(), p.end(), 0);
    for (const auto& c : cycles)
        for (size_t k = 0; k < c.size(); ++k) p[static_cast<size_t>(c[k])] = c[(k + 1) % c.size()];
    return p;
}

struct Reference {
    std::string label;
    CayleyGroup group;
    GroupFingerprint fp;
};

const std::vector<Reference>& references() {
    static const std::vector<Reference> refs = [] {
        std::vector<std::pair<std::string, std::vector<Perm>>> defs = {
            {"C1", {}},
            {"C2", {cycle_perm(2)}},
            {"C3", {cycle_perm(3)}},
            {"C4", {cycle_perm(4)}},
            {"C2^2", {from_cycles(4, {{0, 1}}), from_cycles(4, {{2, 3}})}},
            {"C5", {cycle_perm(5)}},
            {"C6", {cycle_perm(6)}},
            {"S3", {from_cycles(3, {{0, 1}}), cycle_perm(3)}},
            {"C7", {cycle_perm(7)}},
            {"C8", {cycle_perm(8)}},
            {"C2xC4", {from_cycles(6, {{0, 1}}), from_cycles(6, {{2, 3, 4, 5}})}},
            {"C2^3", {from_cycles(6, {{0, 1}}), from_cycles(6, {{2, 3}}), from_cycles(6, {{4, 5}})}},
            {"D4", {cycle_perm(4), from_cycles(4, {{1, 3}})}},
            {"Q8", {from_cycles(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}), from_cycles(8, {{0, 4, 2, 6}, {1, 7, 3, 5}})}},
            {"C12", {cycle_perm(12)}},
            {"C2xC6", {from_cycles(8, {{0, 1}}), from_cycles(8, {{2, 3, 4, 5, 6, 7}})}},
            {"D6", {cycle_perm(6), from_cycles(6, {{1, 5}, {2, 4}})}},
            {"A4", {from_cycles(4, {{0, 1, 2}}), from_cycles(4, {{0, 1}, {2, 3}})}},
            {"C7:C3", {cycle_perm(7), from_cycles(7, {{1, 2, 4}, {3, 6, 5}})}},
            {"C2xD4", {from_cycles(6, {{0, 1}}), from_cycles(6, {{2, 3, 4, 5}}), from_cycles(6, {{3, 5}})}},
            {"C2wrA3", {from_cycles(6, {{0, 3}}), from_cycles(6, {{0, 1, 2}, {3, 4, 5}})}},
            {"S4", {from_cycles(4, {{0, 1}}), cycle_perm(4)}},
            {"C2wrS3", {from_cycles(6, {{0, 3}}), from_cycles(6, {{0, 1, 2}, {3, 4, 5}}), from_cycles(6, {{0, 1}, {3, 4}})}},
            {"A5", {cycle_perm(5), from_cycles(5, {{0, 1, 2}})}},
            // x -> x + 1, x -> 2x, x -> -1/x on the projective line over F7 (7 = infinity)
            {"PSL(2,7)", {from_cycles(8, {{0, 1, 2, 3, 4, 5, 6}}), from_cycles(8, {{1, 2, 4}, {3, 6, 5}}),
                          from_cycles(8, {{0, 7}, {1, 6}, {2, 3}, {4, 5}})}},
        };
        std::vector<Reference> out;
        for (auto& [label, gens] : defs) {
            CayleyGroup g = cayley_from_permutations(gens);
            GroupFingerprint f = fingerprint(g, g.all());
            out.push_back({label, std::move(g), std::move(f)});
        }
        return out;
    }();
    return refs;
}

}  // namespace

std::string identify_small_group(const CayleyGroup& g, const Bits& s) {
    const int n = static_cast<int>(s.count());
    GroupFingerprint f;
    bool have_fp = false;
    for (const auto& r : references()) {
        if (r.group.order() != n) continue;
        if (!have_fp) {
            f = fingerprint(g, s);
            have_fp = true;
        }
        if (f != r.fp) continue;
        if (find_isomorphism(g, s, r.group, r.group.all())) return r.label;
    }
    return "order-" + std::to_string(n);
}

// ---------------------------------------------------------------------------
// SU(2)_3

namespace {

ExactMatrix rot_z(long n) {
    CycNum c = CycNum::cos2pi(1, n), s = CycNum::sin2pi(1, n);
    return ExactMatrix::from_rows({{c, -s, 0}, {s, c, 0}, {0, 0, 1}});
}

ExactMatrix cyc3() {
    ExactMatrix m(3);
    m(1, 0) = 1;
    m(2, 1) = 1;
    m(0, 2) = 1;
    return m;
}

// order-5 rotation normalizing nothing in particular; with the tetrahedral
// group it generates the icosahedral group
ExactMatrix ico5() {
    CycNum phi = (CycNum(1) + CycNum::sqrt_rational(5)) / CycNum(2);
    CycNum ip = phi - CycNum(1);  // 1/phi
    CycNum h(mpq_class(1, 2));
    return ExactMatrix::from_rows({{h, -phi * h, ip * h}, {phi * h, ip * h, -h}, {ip * h, h, phi * h}});
}

}  // namespace

std::vector<So3Subgroup> so3_finite_subgroups(int max_n, const ExactMatrix& frame) {
    ExactMatrix fi = frame.inverse();
    auto make = [&](const std::string& label, const std::vector<ExactMatrix>& gens) {
        std::vector<ExactMatrix> g;
        for (const auto& x : gens) g.push_back(frame * x * fi);
        So3Subgroup s{label, generate_closure(g)};
        s.group.name = label;
        return s;
    };
    std::vector<So3Subgroup> out;
    ExactMatrix flip = ExactMatrix::diag({1, -1, -1});
    for (int n = 1; n <= max_n; ++n) out.push_back(make("C" + std::to_string(n), {rot_z(n)}));
    for (int n = 2; n <= max_n; ++n) out.push_back(make("D" + std::to_string(n), {rot_z(n), flip}));
    ExactMatrix half = ExactMatrix::diag({-1, -1, 1});
    out.push_back(make("A4", {half, cyc3()}));
    out.push_back(make("S4", {rot_z(4), cyc3()}));
    out.push_back(make("A5", {half, cyc3(), ico5()}));
    return out;
}

CandidateGroup su23_candidate(const FiniteMatrixGroup& rotations, const std::string& label) {
    CandidateGroup g{&component("M"), {}, label};
    for (const auto& e : rotations.elements) g.coset_reps.push_back(unitary_embedding(e.mat));
    return g;
}

nlohmann::json Su23Classification::to_json() const {
    nlohmann::json j;
    j["count"] = accepted.size();
    for (const auto& s : accepted) j["groups"].push_back({{"label", s.label}, {"order", s.group.order()}});
    j["maximal"] = maximal;
    j["rejected"] = rejected;
    return j;
}

Su23Classification classify_su23_report(int max_n, const ExactMatrix& frame) {
    Su23Classification out;
    for (auto& s : so3_finite_subgroups(max_n, frame)) {
        CandidateGroup cand = su23_candidate(s.group, s.label);
        if (check_st3(cand, default_character_family(), AverageMode::Exact, {}, true).pass) {
            out.candidates.push_back(std::move(cand));
            out.accepted.push_back(std::move(s));
        } else {
            out.rejected.push_back(s.label);
        }
    }
    for (auto& c : out.candidates) c.component = &component("M");
    const auto amb = AmbientModel::so3();
    for (size_t i = 0; i < out.accepted.size(); ++i) {
        const auto& gi = out.accepted[i].group;
        bool contained = false;
        for (size_t j = 0; j < out.accepted.size() && !contained; ++j) {
            const auto& gj = out.accepted[j].group;
            if (j == i || gj.order() <= gi.order() || gj.order() % gi.order()) continue;
            for (const auto& sub : subgroup_classes(gj))
                if (sub.order() == gi.order() && ambient_subgroup_conjugate(sub, gi, amb)) {
                    contained = true;
                    break;
                }
        }
        if (!contained) out.maximal.push_back(out.accepted[i].label);
    }
    return out;
}

std::vector<CandidateGroup> classify_su23() { return classify_su23_report().candidates; }

// ---------------------------------------------------------------------------
// Wreath products

ExactMatrix wreath_word(const std::string& word, int n) {
    ExactMatrix m = ExactMatrix::identity(n);
    for (char ch : word) {
        ExactMatrix x = ExactMatrix::identity(n);
        switch (ch) {
            case 'e':
                break;
            case 'a':
            case 'b':
            case 'c': {
                int k = ch - 'a';
                if (k >= n) throw std::invalid_argument("wreath word letter out of range");
                x(k, k) = -1;
                break;
            }
            case 't':
                x = ExactMatrix(n);
                x(0, 1) = 1;
                x(1, 0) = 1;
                for (int k = 2; k < n; ++k) x(k, k) = 1;
                break;
            case 's':
                if (n != 3) throw std::invalid_argument("s needs three coordinates");
                x = cyc3();
                break;
            default:
                throw std::invalid_argument(std::string("bad wreath letter ") + ch);
        }
        m = m * x;
    }
    return m;
}

ExactMatrix wreath_to_usp6(const ExactMatrix& m) {
    if (m.dim() != 3) throw DimensionMismatch("wreath_to_usp6 expects a 3x3 signed permutation");
    ExactMatrix p(3), flips = ExactMatrix::identity(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const CycNum& x = m(i, j);
            if (x.is_zero()) continue;
            p(i, j) = 1;
            if (x == CycNum(-1)) flips = flips * plane_block({i}, 0, 1, -1, 0);
        }
    return flips * unitary_embedding(p);
}

const std::vector<std::vector<std::string>>& wreath_table_names() {
    static const std::vector<std::vector<std::string>> names = {
        {"e"},
        {"a"}, {"ab"}, {"abc"}, {"t"}, {"ct"},
        {"s"},
        {"at"}, {"act"},
        {"a", "b"}, {"a", "bc"}, {"ab", "bc"}, {"c", "t"}, {"ab", "t"}, {"ab", "ct"}, {"abc", "t"},
        {"abc", "s"},
        {"s", "t"}, {"abct", "s"},
        {"c", "at"},
        {"a", "b", "c"}, {"ab", "c", "t"},
        {"a", "b", "t"}, {"ab", "bc", "t"}, {"a", "b", "ct"}, {"ab", "bc", "ct"},
        {"abc", "s", "t"},
        {"ab", "bc", "s"},
        {"a", "b", "c", "t"},
        {"a", "b", "c", "s"},
        {"ab", "bc", "s", "t"}, {"ab", "bc", "at", "s"},
        {"a", "b", "c", "s", "t"},
    };
    return names;
}

std::string wreath_name(const std::vector<std::string>& words) {
    std::string s = "<";
    for (size_t k = 0; k < words.size(); ++k) s += (k ? "," : "") + words[k];
    return s + ">";
}

nlohmann::json WreathClassification::to_json() const {
    nlohmann::json j;
    for (const auto& c : classes)
        j["classes"].push_back({{"name", c.name},
                                {"iso_type", c.iso_type},
                                {"order", c.order},
                                {"normal", c.normal},
                                {"realizable", c.realizable}});
    j["count"] = classes.size();
    j["realizable_count"] = realizable.size();
    return j;
}

namespace {

Bits words_subgroup(const FiniteMatrixGroup& g, const std::vector<std::string>& words, int n) {
    std::vector<int> gens;
    for (const auto& w : words) {
        int x = g.index_of(GroupElement(wreath_word(w, n)));
        if (x < 0) throw std::logic_error("wreath word outside the group: " + w);
        gens.push_back(x);
    }
    return g.table().closure(gens);
}

bool conjugate_into(const CayleyGroup& t, const Bits& s, const Bits& m) {
    for (int x = 0; x < t.order(); ++x) {
        Bits c = t.conjugate(s, x);
        if ((c & m) == c) return true;
    }
    return false;
}

std::vector<int> maximal_among(const CayleyGroup& t, const std::vector<WreathClass>& cls, const std::vector<int>& pool) {
    std::vector<int> out;
    for (int i : pool) {
        bool below = false;
        for (int j : pool)
            if (j != i && cls[static_cast<size_t>(j)].order > cls[static_cast<size_t>(i)].order &&
                conjugate_into(t, cls[static_cast<size_t>(i)].rep, cls[static_cast<size_t>(j)].rep)) {
                below = true;
                break;
            }
        if (!below) out.push_back(i);
    }
    return out;
}

WreathClassification classify_signed_perms(int n, const std::vector<std::vector<std::string>>& names,
                                           const std::vector<std::vector<std::string>>& rule) {
    WreathClassification w;
    if (n == 3) {
        w.group = wreath_c2_s3();
    } else {
        w.group = generate_closure(std::vector<ExactMatrix>{wreath_word("a", 2), wreath_word("t", 2)});
        w.group.name = "C2 wr S2";
    }
    const CayleyGroup& t = w.group.table();
    for (const auto& c : subgroup_classes(t)) {
        WreathClass wc;
        wc.order = c.order;
        wc.normal = c.normal;
        wc.rep = c.rep;
        wc.generators = c.gens;
        wc.iso_type = identify_small_group(t, c.rep);
        w.classes.push_back(std::move(wc));
    }
    for (const auto& words : names) {
        Bits b = words_subgroup(w.group, words, n);
        bool found = false;
        for (auto& c : w.classes) {
            if (c.order != static_cast<int>(b.count())) continue;
            bool conj = false;
            for (int x = 0; x < t.order() && !conj; ++x) conj = t.conjugate(b, x) == c.rep;
            if (!conj) continue;
            if (!c.name.empty()) throw std::logic_error("two table names for one class: " + c.name);
            c.name = wreath_name(words);
            found = true;
            break;
        }
        if (!found) throw std::logic_error("table name matches no class: " + wreath_name(words));
    }
    std::vector<Bits> maxes;
    for (const auto& words : rule) maxes.push_back(words_subgroup(w.group, words, n));
    std::vector<int> all;
    for (size_t i = 0; i < w.classes.size(); ++i) {
        auto& c = w.classes[i];
        for (const auto& m : maxes) c.realizable = c.realizable || conjugate_into(t, c.rep, m);
        if (c.realizable) w.realizable.push_back(static_cast<int>(i));
        all.push_back(static_cast<int>(i));
    }
    w.maximal = maximal_among(t, w.classes, all);
    w.maximal_realizable = maximal_among(t, w.classes, w.realizable);
    return w;
}

}  // namespace

WreathClassification classify_wreath() {
    return classify_signed_perms(3, wreath_table_names(), {{"a", "b", "c"}, {"at", "c"}, {"abc", "s"}});
}

WreathClassification classify_wreath_s2() {
    std::vector<std::vector<std::string>> names;
    std::vector<std::string> labels;
    for (const auto& e : SurfaceCatalog::embedded().with_dimension(2)) {
        names.push_back(e.wreath_words.empty() ? std::vector<std::string>{"e"} : e.wreath_words);
        labels.push_back(e.label);
    }
    auto w = classify_signed_perms(2, names, {{"a", "b"}, {"at"}});
    // report the surface labels rather than the words
    for (auto& c : w.classes)
        for (size_t k = 0; k < names.size(); ++k)
            if (c.name == wreath_name(names[k])) c.name = labels[k];
    return w;
}

CandidateGroup wreath_candidate(const WreathClassification& w, int cls) {
    const auto& c = w.classes.at(static_cast<size_t>(cls));
    CandidateGroup g{&component("H"), {}, c.name};
    for (int x : CayleyGroup::elements_of(c.rep))
        g.coset_reps.push_back(wreath_to_usp6(w.group.elements[static_cast<size_t>(x)].mat));
    return g;
}

// ---------------------------------------------------------------------------
// U(1)_3 cyclic bound

std::vector<int> verify_u13_cyclic_bound(int max_n) {
    if (max_n < 1 || max_n > 200) throw std::invalid_argument("max_n must be in 1..200");
    std::set<int> orders;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::complex<double>> z(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] = std::polar(1.0, 2 * M_PI * k / n);
        // exact verdicts keyed by the sorted exponent triple
        std::map<std::array<int, 3>, bool> exact;
        auto integral = [&](std::array<int, 3> x) {
            std::complex<double> tr = z[static_cast<size_t>(x[0])] + z[static_cast<size_t>(x[1])] + z[static_cast<size_t>(x[2])];
            double v = std::norm(tr);
            if (std::abs(v - std::round(v)) > 1e-6) return false;
            std::sort(x.begin(), x.end());
            auto it = exact.find(x);
            if (it != exact.end()) return it->second;
            CycNum t = CycNum::zeta(n, x[0]) + CycNum::zeta(n, x[1]) + CycNum::zeta(n, x[2]);
            bool ok = recognize_rational_integer(t.norm2()).is_integer;
            exact.emplace(x, ok);
            return ok;
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (std::gcd(std::gcd(a, b), n) != 1) continue;
                int c = ((-a - b) % n + n) % n;
                bool ok = true;
                for (int k = 1; k < n && ok; ++k)
                    ok = integral({(k * a) % n, (k * b) % n, (k * c) % n});
                if (!ok) continue;
                int proj = n / std::gcd(n, std::gcd(((a - b) % n + n) % n, ((a - c) % n + n) % n));
                orders.insert(proj);
            }
    }
    std::vector<int> out(orders.begin(), orders.end());
    for (int m : out)
        if (7 % m && 8 % m && 12 % m)
            throw std::logic_error("cyclic bound violated by projective order " + std::to_string(m));
    return out;
}

// ---------------------------------------------------------------------------
// Table 2 data

namespace {

CycNum cyc_from_json(const nlohmann::json& j) {
    long n = j.at("n").get<long>();
    CycNum s;
    for (const auto& t : j.at("t")) {
        mpq_class q(t.at(1).get<std::string>());
        q.canonicalize();
        s += CycNum(q) * CycNum::zeta(n, t.at(0).get<long>());
    }
    return s;
}

ExactMatrix mat_from_json(const nlohmann::json& j) {
    std::vector<std::vector<CycNum>> rows;
    for (const auto& r : j) {
        rows.emplace_back();
        for (const auto& x : r) rows.back().push_back(cyc_from_json(x));
    }
    return ExactMatrix::from_rows(rows);
}

std::array<int, 2> id_pair(const nlohmann::json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

CayleyGroup presentation_group(const nlohmann::json& p) {
    std::vector<std::vector<int>> gens;
    for (const auto& g : p.at("gens")) {
        std::vector<int> perm;
        for (int x : g.get<std::vector<int>>()) perm.push_back(x - 1);
        gens.push_back(std::move(perm));
    }
    return cayley_from_permutations(gens);
}

}  // namespace

const std::vector<U13MaximalData>& u13_maximal_data() {
    static const std::vector<U13MaximalData> rows = [] {
        std::vector<U13MaximalData> out;
        auto doc = nlohmann::json::parse(embedded_data("u13_maximal"));
        for (const auto& g : doc.at("groups")) {
            U13MaximalData d;
            d.name = g.at("name").get<std::string>();
            d.field = g.at("field").get<std::string>();
            d.h_id = id_pair(g.at("H"));
            d.hc2_id = id_pair(g.at("HC2"));
            d.ratio = g.at("ratio").get<int>();
            for (const auto& m : g.at("generators")) d.generators.push_back(mat_from_json(m));
            d.antilinear = mat_from_json(g.at("antilinear"));
            if (g.contains("alternative")) {
                d.alternative = mat_from_json(g["alternative"]);
                d.alternative_id = id_pair(g.at("alternative_HC2"));
            }
            d.h_presentation = g.at("H_presentation");
            d.hc2_presentation = g.at("HC2_presentation");
            out.push_back(std::move(d));
        }
        return out;
    }();
    return rows;
}

FiniteMatrixGroup u13_maximal_group(const U13MaximalData& d, bool with_c2, bool alternative, size_t order_cap) {
    std::vector<GroupElement> gens;
    for (const auto& m : d.generators) gens.emplace_back(m);
    if (with_c2) {
        if (alternative && !d.alternative) throw std::invalid_argument(d.name + " has no alternative extension");
        gens.emplace_back(alternative ? *d.alternative : d.antilinear, true);
    }
    int m = scalar_subgroup_order(gens, 4 * order_cap);
    FiniteMatrixGroup g = generate_closure(gens, m, order_cap);
    g.name = with_c2 ? d.name + " x| C2" : d.name;
    return g;
}

nlohmann::json Table2Row::to_json() const {
    return {{"name", name},         {"field", field},         {"H_order", h_order},
            {"HC2_order", hc2_order}, {"lift_order", lift_order}, {"ratio", ratio},
            {"H_matches", h_matches}, {"HC2_matches", hc2_matches}};
}

std::vector<Table2Row> build_table2(bool validate, size_t order_cap) {
    const auto& data = u13_maximal_data();
    std::vector<std::future<Table2Row>> jobs;
    for (const auto& d : data)
        jobs.push_back(std::async(std::launch::async, [&d, validate, order_cap] {
            Table2Row r;
            r.name = d.name;
            r.field = d.field;
            FiniteMatrixGroup h = u13_maximal_group(d, false, false, order_cap);
            auto hc2 = std::make_shared<FiniteMatrixGroup>(u13_maximal_group(d, true, false, order_cap));
            r.h_order = static_cast<int>(h.order());
            r.hc2_order = static_cast<int>(hc2->order());
            r.lift_order = static_cast<int>(generate_closure(d.generators, std::nullopt, 4 * order_cap).order());
            r.ratio = r.lift_order / r.h_order;
            if (validate) {
                CayleyGroup ph = presentation_group(d.h_presentation), pe = presentation_group(d.hc2_presentation);
                r.h_matches = ph.order() == r.h_order && find_isomorphism(h.table(), h.table().all(), ph, ph.all());
                r.hc2_matches = pe.order() == r.hc2_order &&
                                find_isomorphism(hc2->table(), hc2->table().all(), pe, pe.all());
            }
            r.group = hc2;
            return r;
        }));
    std::vector<Table2Row> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

// ---------------------------------------------------------------------------
// U(1)_3 classification

bool u13_st3_prime(const ProjectiveLift& lift, const Bits& sub) {
    auto& vi = ValueInterner::global();
    std::unordered_map<int, bool> memo;
    auto integral = [&](int label, bool squared_norm) {
        int key = squared_norm ? label : -2 - label;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        CycNum v = vi.value(label);
        bool ok = recognize_rational_integer(squared_norm ? v.norm2() : v).is_integer;
        memo.emplace(key, ok);
        return ok;
    };
    const CayleyGroup& t = lift.table();
    for (size_t x = sub.find_first(); x != Bits::npos; x = sub.find_next(x)) {
        int xi = static_cast<int>(x);
        if (xi < lift.unitary_order()) {
            if (!integral(lift.labels()[x], true)) return false;
        } else {
            int sq = t.mul(xi, xi);
            if (!integral(lift.labels()[static_cast<size_t>(sq)], false)) return false;
        }
    }
    return true;
}

nlohmann::json U13Class::to_json() const {
    return {{"order", order},     {"unitary_order", unitary_order}, {"antiunitary", antiunitary},
            {"iso_type", iso_type}, {"sources", sources},             {"maximal_index", maximal_index},
            {"st3", st3}};
}

nlohmann::json U13Classification::to_json() const {
    nlohmann::json j;
    j["count"] = classes.size();
    j["maximals_incomparable"] = maximals_incomparable;
    for (const auto& c : classes) j["classes"].push_back(c.to_json());
    return j;
}

namespace {

struct LiftedClass {
    int source;
    Bits rep, lifted;
    std::string key;
};

std::string label_multiset(const ProjectiveLift& l, const Bits& s, const std::vector<int>& labels) {
    std::vector<int> v;
    for (size_t x = s.find_first(); x != Bits::npos; x = s.find_next(x)) v.push_back(labels[x]);
    std::sort(v.begin(), v.end());
    std::string out;
    for (int x : v) out += std::to_string(x) + ",";
    (void)l;
    return out;
}

}  // namespace

U13Classification classify_u13_report(const std::vector<FiniteMatrixGroup>& maximals) {
    const size_t m = maximals.size();
    std::vector<std::shared_ptr<ProjectiveLift>> lifts(m);
    std::vector<std::vector<SubgroupClass>> subs(m);
    {
        std::vector<std::future<void>> jobs;
        for (size_t j = 0; j < m; ++j)
            jobs.push_back(std::async(std::launch::async, [&, j] {
                lifts[j] = std::make_shared<ProjectiveLift>(maximals[j]);
                subs[j] = subgroup_classes(maximals[j].table(), 1000);
            }));
        for (auto& f : jobs) f.get();
    }

    U13Classification out;
    std::vector<LiftedClass> reps;  // representative per output class
    std::map<std::string, std::vector<int>> buckets;
    for (size_t j = 0; j < m; ++j) {
        const auto& lj = *lifts[j];
        for (const auto& sc : subs[j]) {
            Bits lifted = lj.lift_of(sc.rep);
            std::string a = label_multiset(lj, lifted, lj.labels()), b = label_multiset(lj, lifted, lj.conj_labels());
            std::string key = std::to_string(sc.order) + "|" + fingerprint(lj.table(), lifted).to_json().dump() + "|" +
                              std::min(a, b);
            auto& bucket = buckets[key];
            int found = -1;
            for (int idx : bucket) {
                const auto& r = reps[static_cast<size_t>(idx)];
                if (lifts_conjugate(*lifts[static_cast<size_t>(r.source)], r.lifted, lj, lifted, true)) {
                    found = idx;
                    break;
                }
            }
            bool whole = sc.order == static_cast<int>(maximals[j].order());
            if (found < 0) {
                found = static_cast<int>(reps.size());
                bucket.push_back(found);
                reps.push_back({static_cast<int>(j), sc.rep, lifted, key});
                U13Class c;
                c.order = sc.order;
                c.unitary_order = 0;
                for (size_t x = sc.rep.find_first(); x != Bits::npos; x = sc.rep.find_next(x))
                    c.unitary_order += !maximals[j].elements[x].antilinear;
                c.antiunitary = c.unitary_order < c.order;
                c.iso_type = identify_small_group(maximals[j].table(), sc.rep);
                c.st3 = u13_st3_prime(lj, lifted);
                c.group = std::make_shared<FiniteMatrixGroup>(subgroup_of(maximals[j], sc.rep));
                out.classes.push_back(std::move(c));
            }
            auto& c = out.classes[static_cast<size_t>(found)];
            if (std::find(c.sources.begin(), c.sources.end(), static_cast<int>(j)) == c.sources.end())
                c.sources.push_back(static_cast<int>(j));
            if (whole) c.maximal_index = static_cast<int>(j);
        }
    }
    // a maximal group is comparable with another one iff its class also
    // occurs inside another maximal group
    out.maximals_incomparable = true;
    std::set<int> seen;
    for (const auto& c : out.classes)
        if (c.maximal_index >= 0) {
            seen.insert(c.maximal_index);
            if (c.sources.size() != 1) out.maximals_incomparable = false;
        }
    if (seen.size() != m) out.maximals_incomparable = false;
    std::stable_sort(out.classes.begin(), out.classes.end(), [](const U13Class& x, const U13Class& y) {
        return std::tie(x.order, x.unitary_order) < std::tie(y.order, y.unitary_order);
    });
    return out;
}

std::vector<FiniteMatrixGroup> classify_u13(const std::vector<FiniteMatrixGroup>& maximals) {
    std::vector<FiniteMatrixGroup> out;
    for (const auto& c : classify_u13_report(maximals).classes) out.push_back(*c.group);
    return out;
}

std::vector<Order7Class> order7_analysis(const U13Classification& c) {
    std::vector<Order7Class> out;
    for (const auto& k : c.classes) {
        if (k.antiunitary || k.order % 7) continue;
        std::string name = k.order == 7 ? "H0" : k.order == 21 ? "H0 x| A3" : k.order == 168 ? "PSL(2,7)" : "";
        if (name.empty()) name = "order-" + std::to_string(k.order);
        out.push_back({name, k.order});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Split products and totals

namespace {

struct SplitRule {
    bool u1;  // G1^0 = U(1) (else SU(2))
    int d;    // surface identity component dimension
};

std::optional<SplitRule> split_rule(const std::string& type) {
    static const std::map<std::string, SplitRule> rules = {
        {"C", {false, 10}}, {"D", {true, 10}}, {"F", {true, 6}}, {"G", {false, 2}},
        {"I", {false, 3}},  {"J", {true, 3}},  {"K", {false, 1}}, {"L", {true, 1}},
    };
    auto it = rules.find(type);
    if (it == rules.end()) return std::nullopt;
    return it->second;
}

}  // namespace

long count_split_products(const ConnectedComponentDescriptor& c, const SurfaceCatalog& surfaces) {
    auto rule = split_rule(c.absolute_type);
    if (!rule) throw std::invalid_argument(c.id + " is not a split-product component");
    if (c.absolute_type == "L") return surfaces.type_l_extensions;
    long n = 0;
    for (const auto& e : surfaces.with_dimension(rule->d)) {
        if (!rule->u1) {
            n += 1;
            continue;
        }
        // U(1) x G2, N(U(1)) x G2, and one fiber product per kernel class
        n += 2;
        for (const auto& k : e.kernels) n += k.second;
    }
    return n;
}

nlohmann::json ClassificationReport::to_json() const {
    nlohmann::json j;
    for (const auto& c : components)
        j["components"].push_back({{"type", c.type},
                                   {"id", c.id},
                                   {"extensions", c.extensions},
                                   {"maximal", c.maximal},
                                   {"realizable", c.realizable},
                                   {"maximal_realizable", c.maximal_realizable},
                                   {"source", c.source}});
    j["total_axioms"] = total_axioms;
    j["total_realizable"] = total_realizable;
    j["excluded"] = excluded;
    j["maximal_axioms"] = maximal_axioms;
    j["maximal_realizable"] = maximal_realizable;
    return j;
}

namespace {

// subgroup classes of a small matrix group and how many are maximal (the whole group)
std::pair<long, long> count_all_subgroups(const FiniteMatrixGroup& g) {
    return {static_cast<long>(subgroup_classes(g.table()).size()), 1};
}

ComponentCount count_component(const std::string& type, const AggregateInputs& in) {
    const auto& c = component(type);
    ComponentCount r;
    r.type = type;
    r.id = c.id;
    r.source = "computed";
    const auto& surf = SurfaceCatalog::embedded();
    if (type == "A") {
        r.extensions = r.maximal = 1;  // N(USp(6)) = USp(6)
    } else if (type == "B") {
        // N(U(3))/U(3) = C2, generated by complex conjugation
        auto [n, mx] = count_all_subgroups(generate_closure(std::vector<ExactMatrix>{ExactMatrix::diag({-1})}));
        r.extensions = n;
        r.maximal = mx;
    } else if (type == "E") {
        // component groups: subgroups of S3 permuting the three factors
        ExactMatrix t = wreath_word("t"), s = wreath_word("s");
        auto [n, mx] = count_all_subgroups(generate_closure(std::vector<ExactMatrix>{t, s}));
        r.extensions = n;
        r.maximal = mx;
    } else if (type == "H") {
        auto w = classify_wreath();
        r.extensions = static_cast<long>(w.classes.size());
        r.maximal = static_cast<long>(w.maximal.size());
        r.realizable = static_cast<long>(w.realizable.size());
        r.maximal_realizable = static_cast<long>(w.maximal_realizable.size());
        return r;
    } else if (type == "M") {
        auto s = classify_su23_report();
        r.extensions = static_cast<long>(s.accepted.size());
        r.maximal = static_cast<long>(s.maximal.size());
    } else if (type == "N") {
        if (in.u13_count) {
            r.extensions = *in.u13_count;
        } else {
            std::vector<FiniteMatrixGroup> maxes;
            for (const auto& row : build_table2(false)) maxes.push_back(*row.group);
            r.extensions = static_cast<long>(classify_u13_report(maxes).classes.size());
        }
        r.maximal = static_cast<long>(u13_maximal_data().size());
    } else {
        r.extensions = count_split_products(c, surf);
        auto rule = split_rule(type);
        if (type == "L") {
            r.maximal = surf.type_l_maximal;
            r.source = "external";
        } else {
            r.maximal = 0;
            for (const auto& e : surf.with_dimension(rule->d)) r.maximal += e.maximal;
            r.source = "catalog";
        }
        if (type == "G") {
            auto w = classify_wreath_s2();
            r.realizable = static_cast<long>(w.realizable.size());
            r.maximal_realizable = static_cast<long>(w.maximal_realizable.size());
            return r;
        }
    }
    r.realizable = r.extensions;
    r.maximal_realizable = r.maximal;
    return r;
}

}  // namespace

ClassificationReport aggregate_report(bool apply_realizability, const AggregateInputs& in) {
    std::vector<std::string> order = in.order;
    if (order.empty())
        for (const auto& c : component_catalog())
            if (c.in_table1()) order.push_back(c.absolute_type);
    std::vector<std::future<ComponentCount>> jobs;
    for (const auto& t : order) jobs.push_back(std::async(std::launch::async, [t, &in] { return count_component(t, in); }));
    ClassificationReport rep;
    for (auto& j : jobs) rep.components.push_back(j.get());
    std::sort(rep.components.begin(), rep.components.end(),
              [](const ComponentCount& a, const ComponentCount& b) { return a.type < b.type; });
    for (auto& c : rep.components) {
        if (!apply_realizability) {
            c.realizable = c.extensions;
            c.maximal_realizable = c.maximal;
        }
        rep.total_axioms += c.extensions;
        rep.total_realizable += c.realizable;
        rep.maximal_axioms += c.maximal;
        rep.maximal_realizable += c.maximal_realizable;
    }
    rep.excluded = rep.total_axioms - rep.total_realizable;
    return rep;
}

}  // namespace stg
