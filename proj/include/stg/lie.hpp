#pragma once
// Reductive Lie algebras of rank <= 3: root data, Weyl dimension formula,
// weight multiplicities (Freudenthal), duality typing and the 6-dimensional
// symplectic representations that can occur inside USp(6).

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace stg {

struct SimpleFactor {
    char type = 'A';  // A, B, C, G (D3 = A3 is listed as A3)
    int rank = 1;
    std::string name() const;  // sl2, sl3, sl4, sp4, sp6, so7, g2
    std::vector<std::vector<int>> cartan() const;
    long weyl_order() const;
};

struct LieAlgebraDescriptor {
    std::string name;  // e.g. "t1+sl2+sl2"
    int torus_rank = 0;
    std::vector<SimpleFactor> factors;

    int semisimple_rank() const;
    int rank() const { return torus_rank + semisimple_rank(); }
    int dim() const;
    long weyl_order() const;
    // Block-diagonal Cartan matrix of the semisimple part; a_ij = <alpha_j, alpha_i^vee>.
    std::vector<std::vector<int>> cartan() const;
    // Index of the simple factor owning each semisimple coordinate.
    std::vector<int> factor_of_coordinate() const;

    static LieAlgebraDescriptor parse(const std::string& name);
};

// All reductive algebras of rank 1..max_rank built from t_k and simple factors.
std::vector<LieAlgebraDescriptor> algebras_of_rank_at_most(int max_rank = 3);

enum class DualityType { Orthogonal, Symplectic, NotSelfDual };
std::string to_string(DualityType d);

struct IrrepInfo {
    std::vector<int> highest_weight;  // Dynkin labels over the semisimple part
    long dimension = 1;
    DualityType duality = DualityType::Orthogonal;
    std::string label;  // dimension, with a bar for the lexicographically smaller of a dual pair

    bool is_trivial() const;
    bool operator<(const IrrepInfo& b) const { return highest_weight < b.highest_weight; }
    bool operator==(const IrrepInfo& b) const { return highest_weight == b.highest_weight; }
};

// Root system data for a semisimple Cartan matrix.
struct RootSystem {
    std::vector<std::vector<int>> cartan;
    std::vector<std::vector<int>> positive_roots;    // simple-root coordinates
    std::vector<std::vector<int>> positive_coroots;  // simple-coroot coordinates
    std::vector<mpq_class> half_lengths;             // (alpha_i, alpha_i) / 2
    std::vector<std::vector<mpq_class>> weight_form; // (omega_i, omega_j)

    explicit RootSystem(std::vector<std::vector<int>> cartan);
    int rank() const { return static_cast<int>(cartan.size()); }
    long weyl_dimension(const std::vector<int>& hw) const;
    // -w0(hw): the dominant weight in the orbit of -hw.
    std::vector<int> dual_weight(const std::vector<int>& hw) const;
    DualityType duality(const std::vector<int>& hw) const;
    // Weight multiplicities (Dynkin labels) by Freudenthal's formula.
    std::map<std::vector<int>, long> weights(const std::vector<int>& hw) const;
    std::vector<int> root_in_weight_basis(const std::vector<int>& root) const;
    mpq_class inner(const std::vector<int>& x, const std::vector<int>& y) const;
};

IrrepInfo make_irrep(const LieAlgebraDescriptor& alg, const std::vector<int>& hw);

// Irreps of the semisimple part with dimension <= max_dim (max_dim <= 64),
// sorted by dimension then highest weight.
std::vector<IrrepInfo> enumerate_irreps(const LieAlgebraDescriptor& alg, long max_dim);

struct RepDecomposition {
    std::vector<std::pair<IrrepInfo, int>> summands;  // (irrep, multiplicity), sorted
    long dimension() const;
    std::string str() const;
    nlohmann::json to_json() const;
};

// Faithful 6-dimensional representations of the semisimple part compatible
// with a symplectic form (symplectic irreps with any multiplicity, orthogonal
// ones with even multiplicity, dual pairs with equal multiplicity). Trivial
// summands are allowed only when the algebra has torus factors, and then the
// centralizer must contain a torus of that rank for the torus to act
// faithfully. Results are deduplicated under permutations of equal factors.
std::vector<RepDecomposition> admissible_sixdim_reps(const LieAlgebraDescriptor& alg);

// Rank of a maximal torus of the centralizer of the representation in Sp(6).
int centralizer_torus_rank(const RepDecomposition& rep);

// One connected candidate G0 = S x T produced by the elimination pipeline.
struct ConnectedCandidate {
    LieAlgebraDescriptor algebra;
    RepDecomposition rep;
    std::vector<std::vector<mpq_class>> torus_basis;  // basis of T inside the centralizer torus
    std::vector<std::vector<mpq_class>> hodge;        // Hodge cocharacters (lambda, tau)
    int dim = 0;
    int commutant_dim = 0;
    std::vector<int> irrep_dims;  // complex dims of the G0-irreducible summands (sorted)
    bool u2_factor = false;       // contains U(2) acting on C^2 + dual C^2
    std::string invariant_key() const;
};

struct PipelineReport {
    std::vector<ConnectedCandidate> after_hodge;        // distinct, densely generated by Hodge circles
    std::vector<ConnectedCandidate> after_u2_exclusion;
    std::vector<std::string> eliminated_algebras;      // no admissible 6-dim representation
};

PipelineReport connected_candidates();

}  // namespace stg
