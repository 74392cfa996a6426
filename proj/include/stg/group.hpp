#pragma once
// Finite matrix groups: exact closure, Cayley tables, subgroup classes,
// fingerprints and isomorphism search.
//
// Elements may be antilinear: (A, 1) acts as v -> A conj(v). Products follow
// (A, e)(B, d) = (A conj^e(B), e xor d).

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stg/matrix.hpp"

namespace stg {

using Bits = boost::dynamic_bitset<uint64_t>;

struct OrderCapExceeded : std::runtime_error {
    explicit OrderCapExceeded(size_t cap)
        : std::runtime_error("group closure exceeded order cap " + std::to_string(cap)) {}
};

struct EnumerationBoundExceeded : std::runtime_error {
    explicit EnumerationBoundExceeded(size_t order)
        : std::runtime_error("group of order " + std::to_string(order) + " exceeds the subgroup enumeration bound") {}
};

struct GroupElement {
    ExactMatrix mat;
    bool antilinear = false;

    GroupElement() = default;
    GroupElement(ExactMatrix m, bool anti = false) : mat(std::move(m)), antilinear(anti) {}  // NOLINT

    GroupElement operator*(const GroupElement& b) const;
    GroupElement inverse() const;
    bool operator==(const GroupElement& b) const { return antilinear == b.antilinear && mat == b.mat; }
    std::string key() const { return (antilinear ? "a" : "l") + mat.key(); }
};

// Abstract finite group given by its multiplication table; identity is 0.
class CayleyGroup {
public:
    CayleyGroup() = default;
    CayleyGroup(int n, std::vector<int32_t> table);

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * static_cast<size_t>(n_) + static_cast<size_t>(b)]; }
    int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
    int elem_order(int a) const { return ord_[static_cast<size_t>(a)]; }
    int conj(int x, int a) const { return mul(mul(x, a), inv(x)); }  // x a x^-1
    int power(int a, long e) const;

    Bits all() const;
    Bits closure(const std::vector<int>& gens) const;
    // <S, g>, where S is a subgroup with generators sgens.
    Bits join(const Bits& s, const std::vector<int>& sgens, int g) const;
    Bits conjugate(const Bits& s, int x) const;
    Bits normalizer(const Bits& s) const;
    Bits derived_subgroup(const Bits& s) const;
    bool is_subgroup(const Bits& s) const;
    std::vector<int> small_generating_set(const Bits& s) const;
    static std::vector<int> elements_of(const Bits& s);

    // Conjugacy classes of the whole group (cached).
    const std::vector<std::vector<int>>& conjugacy_classes() const;
    const std::vector<int>& class_index() const;

    // Conjugacy classes of elements of a subgroup under that subgroup.
    std::vector<int> class_sizes(const Bits& s) const;

private:
    int n_ = 0;
    std::vector<int32_t> mul_;
    std::vector<int> inv_, ord_;
    mutable std::shared_ptr<std::vector<std::vector<int>>> classes_;
    mutable std::shared_ptr<std::vector<int>> class_of_;
};

struct SubgroupClass {
    Bits rep;
    std::vector<int> gens;
    int order = 0;
    int num_conjugates = 0;  // index of the normalizer
    bool normal = false;
};

// One representative per conjugacy class of subgroups, sorted by order then
// canonical key. Throws EnumerationBoundExceeded if |G| > bound.
std::vector<SubgroupClass> subgroup_classes(const CayleyGroup& g, size_t bound = 1000);

struct GroupFingerprint {
    int order = 0;
    int exponent = 0;
    std::vector<int> abelian_invariants;      // elementary divisors of G/G', sorted
    std::vector<int> class_sizes;             // sorted multiset
    std::map<int, int> order_histogram;       // element order -> count
    std::optional<int> defining_char_norm;    // sum |tr g|^2 / |G| for linear matrix groups

    bool operator==(const GroupFingerprint& b) const;
    bool operator!=(const GroupFingerprint& b) const { return !(*this == b); }
    nlohmann::json to_json() const;
};

GroupFingerprint fingerprint(const CayleyGroup& g, const Bits& s);

// Isomorphism S1 -> S2 (subgroups of g1, g2). When labels are given, the map
// must preserve them: lab2[phi(x)] == lab1[x]. Returns phi as a map from
// element index of g1 to element index of g2 (-1 outside S1).
std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& g1, const Bits& s1, const CayleyGroup& g2,
                                                 const Bits& s2, const std::vector<int>* lab1 = nullptr,
                                                 const std::vector<int>* lab2 = nullptr);

class FiniteMatrixGroup {
public:
    int dim = 0;
    std::optional<int> projective_scalars;  // quotient by mu_m
    std::string name;
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements;  // elements[0] is the identity

    size_t order() const { return elements.size(); }
    const CayleyGroup& table() const { return *table_; }
    bool has_antilinear() const;
    // Index of an element after canonicalization, or -1.
    int index_of(const GroupElement& e) const;
    GroupElement canonical(const GroupElement& e) const;
    // BFS word structure from closure: element x = parent[x] * generators[parent_gen[x]].
    const std::vector<int>& word_parent() const { return parent_; }
    const std::vector<int>& word_parent_gen() const { return parent_gen_; }

    nlohmann::json to_json() const;
    static FiniteMatrixGroup from_json(const nlohmann::json& j, size_t order_cap = 10000);

    friend FiniteMatrixGroup generate_closure(const std::vector<GroupElement>&, std::optional<int>, size_t, int);
    friend FiniteMatrixGroup subgroup_of(const FiniteMatrixGroup&, const Bits&, const std::string&);

private:
    std::shared_ptr<CayleyGroup> table_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> parent_, parent_gen_;
};

// Canonical representative of e modulo mu_m: the first nonzero entry in
// row-major order gets argument in [0, 2 pi / m).
GroupElement projective_canonical(const GroupElement& e, int m);

FiniteMatrixGroup generate_closure(const std::vector<GroupElement>& generators,
                                   std::optional<int> projective_scalars = std::nullopt, size_t order_cap = 10000,
                                   int dim = -1);
FiniteMatrixGroup generate_closure(const std::vector<ExactMatrix>& generators,
                                   std::optional<int> projective_scalars = std::nullopt, size_t order_cap = 10000,
                                   int dim = -1);

// Order m of the scalar subgroup of the linear (non-projective) closure.
int scalar_subgroup_order(const std::vector<GroupElement>& generators, size_t order_cap = 20000);

FiniteMatrixGroup subgroup_of(const FiniteMatrixGroup& g, const Bits& s, const std::string& name = "");
Bits bits_of(const FiniteMatrixGroup& ambient, const FiniteMatrixGroup& h);

std::vector<FiniteMatrixGroup> subgroup_classes(const FiniteMatrixGroup& g, size_t bound = 1000);
GroupFingerprint group_fingerprint(const FiniteMatrixGroup& g);

// Signed 3x3 permutation matrices: the Weyl group of USp(6).
FiniteMatrixGroup wreath_c2_s3();

}  // namespace stg
