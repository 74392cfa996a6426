#include "stg/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>

#include "stg/classify.hpp"
#include "stg/haar.hpp"

namespace stg {

namespace {

using Clock = std::chrono::steady_clock;

ExactMatrix rotation(long n) {
    CycNum c = CycNum::cos2pi(1, n), s = CycNum::sin2pi(1, n);
    return ExactMatrix::from_rows({{c, -s, 0}, {s, c, 0}, {0, 0, 1}});
}

ExactMatrix rational_frame() {
    ExactMatrix f1 = ExactMatrix::from_rows(
        {{mpq_class(3, 5), mpq_class(-4, 5), 0}, {mpq_class(4, 5), mpq_class(3, 5), 0}, {0, 0, 1}});
    ExactMatrix f2 = ExactMatrix::from_rows(
        {{1, 0, 0}, {0, mpq_class(5, 13), mpq_class(-12, 13)}, {0, mpq_class(12, 13), mpq_class(5, 13)}});
    return f1 * f2;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
}

// Shared results so the U(1)_3 classification runs once.
struct Context {
    const AcceptanceOptions& opt;
    std::vector<Table2Row> table2;
    std::optional<U13Classification> u13;

    const U13Classification& u13_report() {
        if (!u13) {
            if (table2.empty()) table2 = build_table2(true, opt.order_cap);
            std::vector<FiniteMatrixGroup> maxes;
            for (const auto& r : table2) maxes.push_back(*r.group);
            u13 = classify_u13_report(maxes);
        }
        return *u13;
    }
};

// (1) rotation cosets R(2 pi / n) of SU(2)_3
void crit1(Context&, CriterionResult& r) {
    std::vector<int> accepted;
    for (int n = 1; n <= 60; ++n) {
        // a failing generator coset already rejects C_n; the full coset list
        // is only built when it passes
        ExactMatrix rot = unitary_embedding(rotation(n));
        CandidateGroup g{&component("M"), {ExactMatrix::identity(6), rot}, "C" + std::to_string(n)};
        if (!check_st3(g, default_character_family(), AverageMode::Exact, {}, true).pass) continue;
        for (int k = 2; k < n; ++k) g.coset_reps.push_back(g.coset_reps.back() * rot);
        if (check_st3(g, default_character_family(), AverageMode::Exact, {}, true).pass) accepted.push_back(n);
    }
    r.facts = {{"accepted", accepted}};
    r.pass = accepted == std::vector<int>{1, 2, 3, 4, 6};
    std::string s;
    for (int n : accepted) s += (s.empty() ? "" : ",") + std::to_string(n);
    r.detail = "accepted n = {" + s + "} for n <= 60";
}

// (2) finite subgroups of SO(3)
void crit2(Context&, CriterionResult& r) {
    auto s = classify_su23_report();
    std::vector<std::string> labels;
    for (const auto& a : s.accepted) labels.push_back(a.label);
    r.facts = {{"count", labels.size()}, {"groups", labels}, {"maximal", s.maximal}};
    r.pass = labels.size() == 11 && std::set<std::string>(s.maximal.begin(), s.maximal.end()) ==
                                        std::set<std::string>{"D6", "S4"};
    r.detail = std::to_string(labels.size()) + " groups, maximal {" + join(s.maximal) + "}";
}

// (3) C2 wr S3
void crit3(Context&, CriterionResult& r) {
    static const std::set<std::string> starred = {"<abc>", "<ab,bc>", "<a,b,c>", "<ab,bc,s>",
                                                  "<a,b,c,s>", "<ab,bc,s,t>", "<ab,bc,at,s>"};
    static const std::set<std::string> underlined = {"<e>",   "<a>",    "<ab>",     "<abc>",   "<s>",
                                                     "<at>",  "<act>",  "<a,b>",    "<a,bc>",  "<ab,bc>",
                                                     "<abc,s>", "<c,at>", "<a,b,c>"};
    auto w = classify_wreath();
    std::set<std::string> normal, real;
    int s4 = 0;
    for (const auto& c : w.classes) {
        if (c.normal && c.order > 1 && c.order < static_cast<int>(w.group.order())) normal.insert(c.name);
        if (c.realizable) real.insert(c.name);
        s4 += c.iso_type == "S4";
    }
    r.facts = {{"classes", w.classes.size()}, {"realizable", real.size()}, {"maximal_realizable", w.maximal_realizable.size()}};
    r.pass = w.classes.size() == 33 && normal == starred && real == underlined && s4 == 2;
    r.detail = std::to_string(w.classes.size()) + " classes, " + std::to_string(real.size()) + " realizable, stars " +
               (normal == starred ? "agree" : "differ") + ", S4 classes " + std::to_string(s4);
}

// (4) cyclic bound
void crit4(Context& ctx, CriterionResult& r) {
    auto orders = verify_u13_cyclic_bound(ctx.opt.max_n);
    bool ok = true;
    for (int m : orders) ok = ok && (7 % m == 0 || 8 % m == 0 || 12 % m == 0);
    for (int m : {7, 8, 12}) ok = ok && std::count(orders.begin(), orders.end(), m) == 1;
    r.facts = {{"max_n", ctx.opt.max_n}, {"orders", orders}};
    r.pass = ok;
    std::string s;
    for (int m : orders) s += (s.empty() ? "" : ",") + std::to_string(m);
    r.detail = "projective orders {" + s + "} for n <= " + std::to_string(ctx.opt.max_n);
}

// (5) the twelve maximal groups
void crit5(Context& ctx, CriterionResult& r) {
    static const std::vector<int> h = {24, 24, 24, 24, 48, 72, 72, 96, 96, 168, 216, 216};
    static const std::vector<int> ratio = {1, 1, 1, 2, 1, 1, 1, 1, 1, 2, 3, 3};
    ctx.table2 = build_table2(true, ctx.opt.order_cap);
    bool ok = ctx.table2.size() == 12;
    int matched = 0;
    for (size_t k = 0; ok && k < 12; ++k) {
        const auto& row = ctx.table2[k];
        bool m = row.h_order == h[k] && row.hc2_order == 2 * h[k] && row.ratio == ratio[k] && row.h_matches &&
                 row.hc2_matches;
        matched += m;
    }
    ok = ok && matched == 12;
    bool incomparable = ctx.u13_report().maximals_incomparable;
    r.facts = {{"rows", ctx.table2.size()}, {"matched", matched}, {"incomparable", incomparable}};
    r.pass = ok && incomparable;
    r.detail = std::to_string(matched) + "/12 rows match, maximal groups " +
               (incomparable ? "pairwise non-conjugate and incomparable" : "comparable");
}

// (6) U(1)_3 classification
void crit6(Context& ctx, CriterionResult& r) {
    const auto& c = ctx.u13_report();
    int st3 = 0;
    for (const auto& k : c.classes) st3 += k.st3;
    r.facts = {{"classes", c.classes.size()}, {"st3", st3}};
    r.pass = c.classes.size() == 171 && st3 == 171;
    r.detail = std::to_string(c.classes.size()) + " classes";
}

// (7) order 7
void crit7(Context& ctx, CriterionResult& r) {
    const auto& c = ctx.u13_report();
    auto seven = order7_analysis(c);
    std::vector<std::string> names;
    for (const auto& s : seven) names.push_back(s.name);
    std::sort(names.begin(), names.end());
    bool iso = true;
    for (const auto& k : c.classes)
        if (!k.antiunitary && k.order == 168) iso = iso && k.iso_type == "PSL(2,7)";
        else if (!k.antiunitary && k.order == 21) iso = iso && k.iso_type == "C7:C3";
    r.facts = {{"classes", names}};
    r.pass = iso && names == std::vector<std::string>{"H0", "H0 x| A3", "PSL(2,7)"};
    r.detail = "{" + join(names) + "}";
}

// (8) counts
void crit8(Context& ctx, CriterionResult& r) {
    const auto& surf = SurfaceCatalog::embedded();
    std::vector<std::pair<std::string, long>> expected = {{"C", 1}, {"D", 2}, {"F", 5}, {"G", 8},
                                                          {"I", 10}, {"J", 31}, {"K", 32}};
    bool ok = true;
    for (const auto& [t, n] : expected) ok = ok && count_split_products(component(t), surf) == n;
    AggregateInputs in;
    in.u13_count = static_cast<long>(ctx.u13_report().classes.size());
    auto rep = aggregate_report(true, in);
    long e = 0, h = 0;
    for (const auto& c : rep.components) {
        if (c.type == "E") e = c.extensions;
        if (c.type == "H") h = c.extensions;
    }
    ok = ok && e == 4 && h == 33;
    ok = ok && rep.total_axioms == 433 && rep.total_realizable == 410 && rep.excluded == 23 &&
         rep.maximal_axioms == 30 && rep.maximal_realizable == 33;
    r.facts = rep.to_json();
    r.pass = ok;
    r.detail = std::to_string(rep.total_axioms) + " / " + std::to_string(rep.total_realizable) + " / " +
               std::to_string(rep.excluded) + " / " + std::to_string(rep.maximal_axioms) + " / " +
               std::to_string(rep.maximal_realizable);
}

// (9) ST4
void crit9(Context&, CriterionResult& r) {
    int passing = 0;
    bool ok = !check_st4(component("SO3")).pass && !check_st4(component("SU3")).pass;
    for (const auto& c : component_catalog())
        if (c.in_table1()) passing += check_st4(c).pass;
    r.facts = {{"table1_pass", passing}};
    r.pass = ok && passing == 14;
    r.detail = std::string("SO(3), SU(3) ") + (ok ? "fail" : "unexpected") + "; " + std::to_string(passing) +
               "/14 pass";
}

// (10) Hodge circles and the connected list
void crit10(Context&, CriterionResult& r) {
    int dense = 0;
    for (const auto& c : component_catalog())
        if (c.in_table1()) dense += hodge_circles(c).dense;
    auto p = connected_candidates();
    std::set<std::string> types;
    bool all_table1 = true;
    for (const auto& cand : p.after_u2_exclusion) {
        const auto* c = match_candidate(cand);
        all_table1 = all_table1 && c && c->in_table1();
        if (c) types.insert(c->absolute_type);
    }
    int u2 = 0;
    for (const auto& cand : p.after_hodge) u2 += cand.u2_factor;
    r.facts = {{"dense", dense}, {"connected", p.after_u2_exclusion.size()}, {"u2_excluded", u2}};
    r.pass = dense == 14 && all_table1 && types.size() == 14 && p.after_u2_exclusion.size() == 14 &&
             u2 == static_cast<int>(p.after_hodge.size() - p.after_u2_exclusion.size()) && u2 > 0;
    r.detail = std::to_string(dense) + "/14 dense, " + std::to_string(types.size()) + " connected groups after " +
               std::to_string(u2) + " U(2) exclusion(s)";
}

// (11) Monte Carlo against exact values
void crit11(Context& ctx, CriterionResult& r) {
    CycNum z = CycNum::zeta(12);
    std::vector<std::pair<std::string, ExactMatrix>> cosets = {
        {"M", unitary_embedding(ExactMatrix::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}))},
        {"H", symplectic_form(6)},
        {"N", unitary_embedding(ExactMatrix::diag({z, z.pow(5), z.pow(6)}))},
        {"K", plane_block({0, 1, 2}, 0, 1, -1, 0)},
        {"F", unitary_embedding(ExactMatrix::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}))},
    };
    std::vector<CharacterSpec> chars = {CharacterSpec::a1_squared(), CharacterSpec::sym2(), CharacterSpec::lambda2(),
                                        CharacterSpec::lambda2_squared()};
    int within = 0, k = 0;
    nlohmann::json triples = nlohmann::json::array();
    for (const auto& [id, a] : cosets)
        for (const auto& chi : chars) {
            const auto& c = component(id);
            auto exact = coset_character_average(c, a, chi).to_complex();
            SampleConfig cfg;
            cfg.seed = ctx.opt.seed + static_cast<uint64_t>(k++);
            cfg.n_samples = ctx.opt.samples;
            cfg.coset_rep = a;
            auto e = empirical_average(c, chi, cfg);
            bool in = std::abs(e.mean - exact.real()) <= 3 * e.std_error + 1e-9 &&
                      std::abs(e.mean_imag - exact.imag()) <= 3 * e.std_error_imag + 1e-9;
            within += in;
            triples.push_back({{"component", id}, {"character", chi.name}, {"seed", cfg.seed}, {"within", in}});
        }
    r.facts = {{"samples", ctx.opt.samples}, {"within", within}, {"triples", triples}};
    r.pass = within >= 19;
    r.detail = std::to_string(within) + "/20 triples within 3 sigma at " + std::to_string(ctx.opt.samples) +
               " samples";
}

bool closure_axioms(const FiniteMatrixGroup& g) {
    const CayleyGroup& t = g.table();
    const int n = t.order();
    for (int a = 0; a < n; ++a) {
        if (t.mul(0, a) != a || t.mul(a, 0) != a || t.mul(a, t.inv(a)) != 0) return false;
        for (int b = 0; b < n; ++b) {
            if (g.index_of(g.elements[static_cast<size_t>(a)] * g.elements[static_cast<size_t>(b)]) != t.mul(a, b))
                return false;
            const int ab = t.mul(a, b);
            for (int c = 0; c < n; ++c)
                if (t.mul(ab, c) != t.mul(a, t.mul(b, c))) return false;
        }
    }
    return true;
}

bool classes_pairwise_distinct(const CayleyGroup& t, const std::vector<SubgroupClass>& cls) {
    for (size_t i = 0; i < cls.size(); ++i)
        for (size_t j = i + 1; j < cls.size(); ++j) {
            if (cls[i].order != cls[j].order) continue;
            for (int x = 0; x < t.order(); ++x)
                if (t.conjugate(cls[i].rep, x) == cls[j].rep) return false;
        }
    return true;
}

// (12) property suites
void crit12(Context& ctx, CriterionResult& r) {
    // cyclotomic: Moebius sums and round trips through larger conductors
    bool mobius = true;
    for (long n = 1; n <= 200 && mobius; ++n) {
        CycNum s;
        for (long k = 0; k < n; ++k)
            if (std::gcd(k, n) == 1) s += CycNum::zeta(n, k);
        long mu = 1, m = n;
        for (long p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) mu = 0;
                mu = -mu;
                while (m % p == 0) m /= p;
            }
        if (m > 1) mu = -mu;
        mobius = s == CycNum(mu);
    }
    bool round_trip = true;
    for (long n : {3L, 4L, 5L, 7L, 8L, 9L, 12L, 15L, 20L, 21L}) {
        CycNum x;
        for (long k = 0; k < n; ++k) {
            mpq_class c((k * 7) % 5 - 2, 1 + k % 3);
            c.canonicalize();
            x += CycNum(c) * CycNum::zeta(n, k);
        }
        for (long m : {x.order() * 3, x.order() * 4}) {
            long mm = m % 4 == 2 ? 2 * m : m;
            round_trip = round_trip && CycNum::from_coeffs(mm, x.coeffs_at(mm)) == x;
        }
    }
    // closure axioms on groups of order <= 200
    bool closure = closure_axioms(wreath_c2_s3());
    for (const auto& s : so3_finite_subgroups(6))
        if (s.label == "S4" || s.label == "A5" || s.label == "D6") closure = closure && closure_axioms(s.group);
    for (const auto& d : u13_maximal_data())
        if (d.name == "G24") closure = closure && closure_axioms(u13_maximal_group(d, false, false, ctx.opt.order_cap));
    // subgroup classes are pairwise non-conjugate
    auto w = classify_wreath();
    bool distinct = classes_pairwise_distinct(w.group.table(), subgroup_classes(w.group.table()));
    for (const auto& s : so3_finite_subgroups(4))
        if (s.label == "S4") distinct = distinct && classes_pairwise_distinct(s.group.table(), subgroup_classes(s.group.table()));
    // ST3 verdicts do not change under conjugation
    auto a = classify_su23_report(8), b = classify_su23_report(8, rational_frame());
    std::vector<std::string> la, lb;
    for (const auto& s : a.accepted) la.push_back(s.label);
    for (const auto& s : b.accepted) lb.push_back(s.label);
    bool invariant = la == lb && a.rejected == b.rejected;
    r.facts = {{"moebius", mobius}, {"round_trip", round_trip}, {"closure", closure}, {"distinct", distinct},
               {"conjugation_invariant", invariant}};
    r.pass = mobius && round_trip && closure && distinct && invariant;
    auto yn = [](bool x) { return x ? "ok" : "FAIL"; };
    r.detail = std::string("moebius ") + yn(mobius) + ", round trip " + yn(round_trip) + ", closure " + yn(closure) +
               ", classes " + yn(distinct) + ", ST3 invariance " + yn(invariant);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    struct CriterionDef {
        int id;
        const char* title;
        double budget;
        void (*run)(Context&, CriterionResult&);
    };
    static const CriterionDef defs[] = {
        {1, "SU(2)_3 cyclic cosets", 1, crit1},
        {2, "SU(2)_3 component groups", 1, crit2},
        {3, "C2 wr S3 subgroup classes", 10, crit3},
        {4, "U(1)_3 cyclic bound", 60, crit4},
        {5, "maximal U(1)_3 groups", 60, crit5},
        {6, "U(1)_3 component groups", 600, crit6},
        {7, "order-7 subgroups", 0, crit7},
        {8, "extension counts", 0, crit8},
        {9, "ST4 verdicts", 0, crit9},
        {10, "Hodge circles and connected list", 0, crit10},
        {11, "Monte Carlo cross-validation", 300, crit11},
        {12, "property suites", 0, crit12},
    };
    Context ctx{opt, {}, {}};
    std::vector<CriterionResult> out;
    for (const auto& s : defs) {
        CriterionResult r;
        r.id = s.id;
        r.title = s.title;
        r.budget = s.budget;
        auto t0 = Clock::now();
        try {
            s.run(ctx, r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (opt.enforce_time && r.budget > 0 && r.seconds > r.budget) {
            r.pass = false;
            r.detail += " (over time budget)";
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %2d ", r.pass ? "PASS" : "FAIL", r.id);
    char tail[64];
    if (r.budget > 0)
        std::snprintf(tail, sizeof tail, " (%.2fs, budget %.0fs)", r.seconds, r.budget);
    else
        std::snprintf(tail, sizeof tail, " (%.2fs)", r.seconds);
    return head + r.title + ": " + r.detail + tail;
}

}  // namespace stg
