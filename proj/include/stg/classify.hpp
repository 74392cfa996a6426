#pragma once
// Component-group enumeration per identity component and the global count.
//
// Conventions for C2 wr S3 (the component group for U(1)^3): a, b, c flip the
// sign of coordinate 1, 2, 3; t = (12); s = (123). Words are matrix products
// left to right, e.g. "act" = a * c * t.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stg/ambient.hpp"
#include "stg/axioms.hpp"

namespace stg {

// ---------------------------------------------------------------------------
// Embedded data catalogs (JSON under data/, compiled in).

// Names: "surface_groups", "u13_maximal", "table5".
const std::string& embedded_data(const std::string& name);
// FNV-1a 64-bit of all embedded catalogs, hex.
std::string catalog_hash();

struct SurfaceCatalogEntry {
    std::string label;
    int d = 0;  // dimension of the identity component in USp(4)
    std::string component_group;
    int component_order = 1;
    std::vector<std::pair<std::string, int>> kernels;  // index-2 subgroups up to normalizer conjugacy
    bool maximal = false;
    bool realizable = true;
    std::vector<std::string> wreath_words;  // d = 2 only: generators in C2 wr S2
};

struct SurfaceCatalog {
    std::vector<SurfaceCatalogEntry> entries;
    long type_l_extensions = 0;
    int type_l_maximal = 0;
    std::string type_l_source;

    std::vector<SurfaceCatalogEntry> with_dimension(int d) const;
    const SurfaceCatalogEntry& find(const std::string& label) const;
    static SurfaceCatalog from_json(const nlohmann::json& j);
    static const SurfaceCatalog& embedded();
};

// ---------------------------------------------------------------------------
// Small-group identification against permutation models.

// Label such as "C4", "C2^2", "D4", "S4", "C2wrS3" when the subgroup is
// isomorphic to one of the reference groups, otherwise "order-N".
std::string identify_small_group(const CayleyGroup& g, const Bits& s);
// Cayley table of a permutation group (points 0..n-1).
CayleyGroup cayley_from_permutations(const std::vector<std::vector<int>>& gens, size_t order_cap = 100000);

// ---------------------------------------------------------------------------
// SU(2)_3: finite subgroups of SO(3).

struct So3Subgroup {
    std::string label;  // "C4", "D6", "A4", "S4", "A5"
    FiniteMatrixGroup group;  // real 3x3 rotations
};

// C_n and D_n for n <= max_n, then the tetrahedral, octahedral and
// icosahedral groups. All generators are conjugated by frame.
std::vector<So3Subgroup> so3_finite_subgroups(int max_n, const ExactMatrix& frame = ExactMatrix::identity(3));

CandidateGroup su23_candidate(const FiniteMatrixGroup& rotations, const std::string& label);

struct Su23Classification {
    std::vector<So3Subgroup> accepted;
    std::vector<CandidateGroup> candidates;
    std::vector<std::string> rejected;
    std::vector<std::string> maximal;
    nlohmann::json to_json() const;
};

Su23Classification classify_su23_report(int max_n = 12, const ExactMatrix& frame = ExactMatrix::identity(3));
std::vector<CandidateGroup> classify_su23();

// ---------------------------------------------------------------------------
// U(1)^3: subgroups of C2 wr S3.

ExactMatrix wreath_word(const std::string& word, int n = 3);  // signed n x n permutation matrix
// Coset representative in N(U(1)^3) for a signed permutation matrix.
ExactMatrix wreath_to_usp6(const ExactMatrix& signed_perm);

struct WreathClass {
    std::string name;      // e.g. "<ab,bc,s>"
    std::string iso_type;  // from identify_small_group
    int order = 0;
    bool normal = false;
    bool realizable = false;
    Bits rep;
    std::vector<int> generators;
};

struct WreathClassification {
    FiniteMatrixGroup group;
    std::vector<WreathClass> classes;  // subgroup_classes order
    std::vector<int> realizable;
    std::vector<int> maximal;             // among all classes
    std::vector<int> maximal_realizable;  // among realizable classes
    nlohmann::json to_json() const;
};

// Table names for the 33 classes: each entry is a list of generator words.
const std::vector<std::vector<std::string>>& wreath_table_names();
std::string wreath_name(const std::vector<std::string>& words);

WreathClassification classify_wreath();
// Same analysis for C2 wr S2 (type G component groups) with the rule
// "conjugate into <a,b> or <at>".
WreathClassification classify_wreath_s2();

CandidateGroup wreath_candidate(const WreathClassification& w, int cls);

// ---------------------------------------------------------------------------
// U(1)_3.

// Projective orders #(H/mu_3) of cyclic groups <D(u,v,w)>, u+v+w integral,
// lcm of denominators n <= max_n, passing |Tr|^2 integrality on every power.
std::vector<int> verify_u13_cyclic_bound(int max_n = 100);

struct U13MaximalData {
    std::string name, field;
    std::array<int, 2> h_id{}, hc2_id{};
    int ratio = 1;
    std::vector<ExactMatrix> generators;
    ExactMatrix antilinear;
    std::optional<ExactMatrix> alternative;
    std::optional<std::array<int, 2>> alternative_id;
    nlohmann::json h_presentation, hc2_presentation;
};
const std::vector<U13MaximalData>& u13_maximal_data();

struct Table2Row {
    std::string name, field;
    int h_order = 0, hc2_order = 0, lift_order = 0, ratio = 0;
    bool h_matches = false, hc2_matches = false;
    std::shared_ptr<const FiniteMatrixGroup> group;  // H x| C2, projective
    nlohmann::json to_json() const;
};

// Projective group H x| C2 (or H alone) from the stored generators.
FiniteMatrixGroup u13_maximal_group(const U13MaximalData& d, bool with_c2 = true, bool alternative = false,
                                    size_t order_cap = 20000);
// With validate, each H and H x| C2 is matched against its stored library presentation.
std::vector<Table2Row> build_table2(bool validate = true, size_t order_cap = 20000);

struct U13Class {
    int order = 0;  // projective order
    int unitary_order = 0;
    bool antiunitary = false;
    std::string iso_type;
    std::vector<int> sources;  // indices of the maximal groups containing a conjugate
    int maximal_index = -1;    // >= 0 when the class is one of the maximal groups
    bool st3 = false;          // |Tr|^2 and antilinear-square traces integral
    std::shared_ptr<const FiniteMatrixGroup> group;
    nlohmann::json to_json() const;
};

struct U13Classification {
    std::vector<U13Class> classes;
    bool maximals_incomparable = false;
    nlohmann::json to_json() const;
};

U13Classification classify_u13_report(const std::vector<FiniteMatrixGroup>& maximals);
std::vector<FiniteMatrixGroup> classify_u13(const std::vector<FiniteMatrixGroup>& maximals);

// (ST3') for a subgroup of a lift: |Tr|^2 integral on unitary elements and
// Tr(g^2) integral on antiunitary ones (the Lambda^2 coset averages).
bool u13_st3_prime(const ProjectiveLift& lift, const Bits& sub);

struct Order7Class {
    std::string name;  // "H0", "H0 x| A3", "PSL(2,7)"
    int order = 0;
};
// The classes inside PSU(3) whose order is divisible by 7.
std::vector<Order7Class> order7_analysis(const U13Classification& c);

// ---------------------------------------------------------------------------
// Split products and the global count.

// Extensions for split-product types C, D, F, G, I, J, K, L.
long count_split_products(const ConnectedComponentDescriptor& c, const SurfaceCatalog& surfaces);

struct ComponentCount {
    std::string type, id;
    long extensions = 0, maximal = 0;
    long realizable = 0, maximal_realizable = 0;
    std::string source;  // "computed", "catalog", "external"
};

struct ClassificationReport {
    std::vector<ComponentCount> components;  // types A..N
    long total_axioms = 0, total_realizable = 0, excluded = 0;
    long maximal_axioms = 0, maximal_realizable = 0;
    nlohmann::json to_json() const;
};

struct AggregateInputs {
    std::optional<long> u13_count;  // from a cached classify_u13 run
    std::vector<std::string> order;  // component types in processing order (default A..N)
};

ClassificationReport aggregate_report(bool apply_realizability = true, const AggregateInputs& in = {});

}  // namespace stg
