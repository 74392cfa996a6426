// stg: catalog browsing, axiom checks, classification runs, tables and the
// acceptance manifest.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stg/acceptance.hpp"
#include "stg/classify.hpp"
#include "stg/haar.hpp"
#include "stg/version.hpp"

using namespace stg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CacheMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    uint64_t seed = 42;
    long samples = 100000;
    std::string mode = "auto";
    size_t order_cap = 20000;
    int max_n = 0;  // 0: per-command default
    std::string format = "md";
    bool no_compute = false;
    std::string component;
    std::string check = "all";
    std::string emit;
};

// ---------------------------------------------------------------------------
// Tables

struct Table {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json extra = json::object();
};

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string md_field(const std::string& s) {
    std::string r;
    for (char c : s) r += c == '|' ? std::string("\\|") : std::string(1, c);
    return r;
}

void emit(const Table& t, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json j = t.extra;
        j["table"] = t.id;
        j["columns"] = t.columns;
        j["rows"] = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (size_t k = 0; k < t.columns.size(); ++k) o[t.columns[k]] = r[k];
            j["rows"].push_back(o);
        }
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        // RFC 4180: CRLF line breaks, quoted fields when needed
        for (size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
        os << "\r\n";
        for (const auto& r : t.rows) {
            for (size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << csv_field(cell(r[k]));
            os << "\r\n";
        }
    } else {
        os << "|";
        for (const auto& c : t.columns) os << " " << md_field(c) << " |";
        os << "\n|";
        for (size_t k = 0; k < t.columns.size(); ++k) os << "---|";
        os << "\n";
        for (const auto& r : t.rows) {
            os << "|";
            for (const auto& v : r) os << " " << md_field(cell(v)) << " |";
            os << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Result cache for the U(1)_3 classification

fs::path cache_dir() {
    if (const char* c = std::getenv("STG_CACHE"); c && *c) return c;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "stg";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "stg";
    return fs::temp_directory_path() / "stg-cache";
}

fs::path u13_cache_file() {
    return cache_dir() / ("u13-" + std::string(kVersion) + "-" + catalog_hash() + ".json");
}

json u13_results(const Options& o) {
    fs::path f = u13_cache_file();
    if (fs::exists(f)) {
        std::ifstream in(f);
        json j = json::parse(in, nullptr, false);
        if (!j.is_discarded() && j.value("version", "") == kVersion && j.value("catalog_hash", "") == catalog_hash())
            return j.at("u13");
    }
    if (o.no_compute) throw CacheMissing("no cached U(1)_3 classification at " + f.string());
    std::vector<FiniteMatrixGroup> maxes;
    for (const auto& r : build_table2(false, o.order_cap)) maxes.push_back(*r.group);
    json u = classify_u13_report(maxes).to_json();
    std::error_code ec;
    fs::create_directories(f.parent_path(), ec);
    fs::path tmp = f;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << json{{"version", kVersion}, {"catalog_hash", catalog_hash()}, {"u13", u}}.dump() << "\n";
    }
    if (!ec) fs::rename(tmp, f, ec);
    if (ec) std::cerr << "warning: could not write cache " << f << ": " << ec.message() << "\n";
    return u;
}

// ---------------------------------------------------------------------------
// Table builders

Table table1() {
    Table t{"table1", {"type", "id", "name", "lie_algebra", "dim", "commutant_dim", "endomorphisms", "hodge_dense"}, {}};
    for (const auto& c : component_catalog())
        if (c.in_table1())
            t.rows.push_back({c.absolute_type, c.id, c.name, c.lie_algebra, c.dim, c.commutant_dim,
                              c.endomorphism_algebra, hodge_circles(c).dense});
    return t;
}

std::string id_str(const std::array<int, 2>& a) { return "[" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "]"; }

Table table2(const Options& o) {
    Table t{"table2", {"group", "field", "H_id", "HC2_id", "H_order", "HC2_order", "lift_ratio", "ids_verified"}, {}};
    auto rows = build_table2(true, o.order_cap);
    const auto& data = u13_maximal_data();
    for (size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        t.rows.push_back({r.name, r.field, id_str(data[k].h_id), id_str(data[k].hc2_id), r.h_order, r.hc2_order,
                          r.ratio, r.h_matches && r.hc2_matches});
    }
    return t;
}

Table table3(const Options& o) {
    AggregateInputs in;
    in.u13_count = static_cast<long>(u13_results(o).at("count").get<size_t>());
    auto rep = aggregate_report(true, in);
    Table t{"table3", {"type", "id", "extensions", "maximal", "realizable", "maximal_realizable", "source"}, {}};
    for (const auto& c : rep.components)
        t.rows.push_back({c.type, c.id, c.extensions, c.maximal, c.realizable, c.maximal_realizable, c.source});
    t.extra["totals"] = {{"extensions", rep.total_axioms},
                         {"realizable", rep.total_realizable},
                         {"excluded", rep.excluded},
                         {"maximal", rep.maximal_axioms},
                         {"maximal_realizable", rep.maximal_realizable}};
    return t;
}

Table wreath_table(const WreathClassification& w, const std::string& id) {
    Table t{id, {"subgroup", "type", "order", "normal", "realizable", "maximal_realizable"}, {}};
    for (size_t k = 0; k < w.classes.size(); ++k) {
        const auto& c = w.classes[k];
        bool mr = std::count(w.maximal_realizable.begin(), w.maximal_realizable.end(), static_cast<int>(k)) > 0;
        t.rows.push_back({c.name, c.iso_type, c.order, c.normal, c.realizable, mr});
    }
    return t;
}

Table table5() {
    Table t{"table5", {"factor", "field", "generators", "order", "note"}, {}};
    auto doc = json::parse(embedded_data("table5"));
    for (const auto& f : doc.at("factors")) {
        const json& gens = f.contains("used") ? f["used"] : f["printed"];
        std::vector<ExactMatrix> mats;
        std::string text;
        for (const auto& m : gens) {
            std::vector<std::vector<CycNum>> rows;
            for (const auto& r : m) {
                rows.emplace_back();
                for (const auto& x : r) {
                    bool gauss = x.contains("i");
                    const auto& ab = gauss ? x["i"] : x["z3"];
                    rows.back().push_back(CycNum(ab[0].get<long>()) +
                                          CycNum(ab[1].get<long>()) * (gauss ? CycNum::i() : CycNum::zeta(3)));
                }
            }
            mats.push_back(ExactMatrix::from_rows(rows));
            text += (text.empty() ? "" : "; ") + mats.back().str();
        }
        t.rows.push_back({f.at("factor"), f.at("field"), text, generate_closure(mats).order(), f.value("note", "")});
    }
    return t;
}

const ConnectedComponentDescriptor& lookup_component(const std::string& id) {
    try {
        return component(id);
    } catch (const std::exception&) {
        throw UsageError("unknown component '" + id + "' (--component)");
    }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_catalog(const Options& o) {
    if (!o.component.empty()) {
        const auto& c = lookup_component(o.component);
        json j = c.to_json();
        if (o.format == "json") {
            std::cout << j.dump(2) << "\n";
        } else {
            Table t{"component", {"field", "value"}, {}};
            for (auto it = j.begin(); it != j.end(); ++it) t.rows.push_back({it.key(), it.value()});
            emit(t, o.format, std::cout);
        }
        return 0;
    }
    emit(table1(), o.format, std::cout);
    return 0;
}

int cmd_axioms(const Options& o) {
    if (o.component.empty()) throw UsageError("axioms needs --component");
    const auto& c = lookup_component(o.component);
    CandidateGroup g{&c, {ExactMatrix::identity(6)}, "1"};
    McOptions mc{o.seed, o.samples};
    AverageMode mode = parse_mode(o.mode);
    Table t{"axioms", {"axiom", "verdict", "detail"}, {}};
    bool ok = true;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        t.rows.push_back({name, pass ? "PASS" : "FAIL", detail});
        ok = ok && pass;
    };
    auto st4_detail = [](const ST4Report& r) {
        std::string d = "commutant " + std::to_string(r.commutant_dim) + ", fixer dim " + std::to_string(r.fixer_dim) +
                        ", component dim " + std::to_string(r.component_dim);
        for (const auto& p : r.escaping_probes) d += "; escapes: " + p;
        return d;
    };
    if (o.check == "st4") {
        auto r = check_st4(c);
        add("ST4", r.pass, st4_detail(r));
    } else if (o.check == "st3") {
        auto r = check_st3(g, default_character_family(), mode, mc);
        add("ST3", r.pass, std::to_string(r.averages.size()) + " averages");
    } else {
        auto r = check_candidate(g, mode, mc);
        if (o.check == "st1" || o.check == "all")
            add("ST1", r.st1, r.st1 ? "cosets normalize G0 inside USp(6)" : "coset outside the normalizer");
        if (o.check == "st2" || o.check == "all")
            add("ST2", r.st2, "Hodge circles " + std::string(r.hodge.dense ? "dense" : "not dense") + ", " +
                                  std::to_string(r.hodge.circles.size()) + " circles");
        if (o.check == "st3" || o.check == "all")
            add("ST3", r.st3, std::to_string(r.st3_report.averages.size()) + " averages");
        if (o.check == "st4" || o.check == "all") add("ST4", r.st4, st4_detail(r.st4_report));
    }
    emit(t, o.format, std::cout);
    return ok ? 0 : 1;
}

int cmd_classify(const Options& o) {
    if (o.component.empty()) {
        emit(table3(o), o.format, std::cout);
        return 0;
    }
    const auto& c = lookup_component(o.component);
    const std::string type = c.absolute_type;
    if (type == "M") {
        auto s = classify_su23_report(o.max_n ? o.max_n : 12);
        Table t{"su23", {"group", "order", "maximal"}, {}};
        for (const auto& a : s.accepted)
            t.rows.push_back({a.label, a.group.order(),
                              std::count(s.maximal.begin(), s.maximal.end(), a.label) > 0});
        emit(t, o.format, std::cout);
        if (o.format == "md") std::cout << "\n" << s.accepted.size() << " component groups\n";
    } else if (type == "H") {
        auto w = classify_wreath();
        emit(wreath_table(w, "table4"), o.format, std::cout);
        if (o.format == "md")
            std::cout << "\n" << w.classes.size() << " component groups, " << w.realizable.size() << " realizable\n";
    } else if (type == "G") {
        auto w = classify_wreath_s2();
        emit(wreath_table(w, "type_g"), o.format, std::cout);
        if (o.format == "md")
            std::cout << "\n" << w.classes.size() << " component groups, " << w.realizable.size() << " realizable\n";
    } else if (type == "N") {
        json u = u13_results(o);
        const auto& data = u13_maximal_data();
        Table t{"u13", {"index", "order", "unitary_order", "antiunitary", "type", "maximal", "st3", "contained_in"}, {}};
        int k = 0;
        for (const auto& cl : u.at("classes")) {
            std::string inside;
            for (int s : cl.at("sources")) inside += (inside.empty() ? "" : "; ") + data[static_cast<size_t>(s)].name;
            int mi = cl.at("maximal_index").get<int>();
            t.rows.push_back({++k, cl.at("order"), cl.at("unitary_order"), cl.at("antiunitary"), cl.at("iso_type"),
                              mi >= 0 ? json(data[static_cast<size_t>(mi)].name) : json(""), cl.at("st3"), inside});
        }
        emit(t, o.format, std::cout);
        if (o.format == "md") std::cout << "\n" << t.rows.size() << " component groups\n";
    } else if (type.empty()) {
        throw UsageError("component '" + o.component + "' is not in the connected list (--component)");
    } else {
        AggregateInputs in;
        in.order = {type};
        auto rep = aggregate_report(true, in);
        Table t{"counts", {"type", "id", "extensions", "maximal", "realizable", "maximal_realizable", "source"}, {}};
        for (const auto& x : rep.components)
            t.rows.push_back({x.type, x.id, x.extensions, x.maximal, x.realizable, x.maximal_realizable, x.source});
        emit(t, o.format, std::cout);
    }
    return 0;
}

int cmd_moments(const Options& o) {
    if (o.component.empty()) throw UsageError("moments needs --component");
    const auto& c = lookup_component(o.component);
    AverageMode mode = parse_mode(o.mode);
    bool exact = mode != AverageMode::MonteCarlo && c.exact_average_supported();
    if (mode == AverageMode::Exact && !c.exact_average_supported())
        throw UsageError("no exact averages for " + c.id + " (--mode exact)");
    bool mc = mode == AverageMode::MonteCarlo || (mode == AverageMode::Auto && !exact);
    Table t{"moments", {"character", "exact", "mc_mean", "mc_std_error"}, {}};
    for (const auto& chi : default_character_family()) {
        json ex = "", mean = "", se = "";
        if (exact) ex = coset_character_average(c, ExactMatrix::identity(6), chi).str();
        if (mc) {
            SampleConfig cfg;
            cfg.seed = o.seed;
            cfg.n_samples = o.samples;
            auto e = empirical_average(c, chi, cfg);
            mean = e.mean;
            se = e.std_error;
        }
        t.rows.push_back({chi.name, ex, mean, se});
    }
    emit(t, o.format, std::cout);
    return 0;
}

int cmd_tables(const Options& o) {
    const std::string& id = o.emit;
    Table t;
    if (id == "table1") t = table1();
    else if (id == "table2") t = table2(o);
    else if (id == "table3") t = table3(o);
    else if (id == "table4") t = wreath_table(classify_wreath(), "table4");
    else if (id == "table5") t = table5();
    else throw UsageError("unknown table '" + id + "' (--emit expects table1..table5)");
    emit(t, o.format, std::cout);
    return 0;
}

int cmd_verify_all(const Options& o) {
    AcceptanceOptions a;
    a.seed = o.seed;
    a.samples = o.samples;
    if (o.max_n) a.max_n = o.max_n;
    a.order_cap = o.order_cap;
    bool text = o.format != "json";
    auto results = run_acceptance(a, [&](const CriterionResult& r) {
        if (text) std::cout << format_result_line(r) << std::endl;
    });
    json manifest;
    manifest["tool"] = "stg";
    manifest["version"] = kVersion;
    manifest["catalog_hash"] = catalog_hash();
    manifest["seed"] = o.seed;
    manifest["samples"] = o.samples;
    manifest["max_n"] = a.max_n;
    manifest["order_cap"] = o.order_cap;
    bool all = true;
    for (const auto& r : results) {
        manifest["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"facts", r.facts}});
        all = all && r.pass;
    }
    manifest["all_pass"] = all;
    std::string doc = manifest.dump(2) + "\n";
    if (!o.emit.empty()) {
        std::ofstream out(o.emit, std::ios::binary);
        if (!out) throw UsageError("cannot write manifest to '" + o.emit + "' (--emit)");
        out << doc;
    }
    if (!text) std::cout << doc;
    else std::cout << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Sato-Tate groups of abelian threefolds: catalog, axioms, classification, tables"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--mode", o.mode, "averaging mode")->check(CLI::IsMember({"exact", "mc", "auto"}))->capture_default_str();
    app.add_option("--order-cap", o.order_cap, "largest group built by closure")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--max-n", o.max_n, "search range for cyclic groups (default 12 for SU2_3, 100 for verify-all)")
        ->check(CLI::Range(1, 200));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "md", "json"}))->capture_default_str();
    app.add_flag("--no-compute", o.no_compute, "use cached results only");
    app.add_option("--component", o.component, "identity component id or type letter");
    app.add_option("--check", o.check, "axiom to check")->check(CLI::IsMember({"st1", "st2", "st3", "st4", "all"}))->capture_default_str();
    app.add_option("--emit", o.emit, "table id (tables) or manifest path (verify-all)");

    auto* catalog = app.add_subcommand("catalog", "list the connected components");
    auto* axioms = app.add_subcommand("axioms", "check the axioms for a connected component");
    auto* classify = app.add_subcommand("classify", "component groups for one component, or the full count");
    auto* moments = app.add_subcommand("moments", "character averages over a connected component");
    auto* tables = app.add_subcommand("tables", "emit table1..table5");
    auto* verify = app.add_subcommand("verify-all", "run every acceptance criterion and write a manifest");
    for (auto* s : {catalog, axioms, classify, moments, tables, verify}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*catalog) return cmd_catalog(o);
        if (*axioms) return cmd_axioms(o);
        if (*classify) return cmd_classify(o);
        if (*moments) return cmd_moments(o);
        if (*tables) {
            if (o.emit.empty()) throw UsageError("tables needs --emit table1..table5");
            return cmd_tables(o);
        }
        if (*verify) return cmd_verify_all(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CacheMissing& e) {
        std::cerr << "error: " << e.what() << "; run without --no-compute first\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
