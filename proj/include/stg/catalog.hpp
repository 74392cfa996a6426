#pragma once
// The connected candidates for identity components inside USp(6).
//
// Coordinates: C^6 with basis (e1, e2, e3, f1, f2, f3) and symplectic form
// J = [[0, I], [-I, 0]]. "Plane p" is span(e_p, f_p). A factor acting on a set
// of planes acts diagonally on all of them (SU(2)_2 = SU(2) on two planes).
// U(3) embeds as A -> diag(A, conj(A)).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stg/lie.hpp"
#include "stg/matrix.hpp"

namespace stg {

struct UnknownComponent : std::invalid_argument {
    explicit UnknownComponent(const std::string& id) : std::invalid_argument("unknown component: " + id) {}
};

enum class FactorKind { U1, SU2, USp4, USp6, U3, SU3, SO3 };

struct ComponentFactor {
    FactorKind kind = FactorKind::U1;
    std::vector<int> planes;  // 0-based

    int dim() const;
    int torus_rank() const;
    std::string label() const;  // "U(1)_2", "SU(2)", ...
};

struct ConnectedComponentDescriptor {
    std::string id;             // CLI id, e.g. "SU2_3"
    std::string name;           // e.g. "SU(2)_3"
    std::string absolute_type;  // "A".."N"; empty for SO3 and SU3
    std::string lie_algebra;    // name as produced by LieAlgebraDescriptor
    std::string endomorphism_algebra;
    std::string normalizer_model;
    std::string membership;     // predicate id
    std::vector<ComponentFactor> factors;
    int dim = 0;
    int commutant_dim = 0;
    // 6 x rank integer matrix: row k is the exponent vector of coordinate k.
    std::vector<std::vector<int>> torus_weights;
    std::vector<ExactMatrix> test_generators;

    int torus_rank() const { return torus_weights.empty() ? 0 : static_cast<int>(torus_weights.front().size()); }
    bool in_table1() const { return !absolute_type.empty(); }
    bool is_torus() const;
    // Every factor is U(1) or SU(2) (the cases with exact coset averages).
    bool exact_average_supported() const;
    // Membership of a 6x6 matrix in the component (exact).
    bool contains(const ExactMatrix& m) const;
    // Torus element with the given exponents-of-zeta_n per torus coordinate.
    ExactMatrix torus_element(const std::vector<long>& k, long n) const;
    nlohmann::json to_json() const;
};

// The 14 Table-1 components (types A..N) followed by SO3 and SU3.
const std::vector<ConnectedComponentDescriptor>& component_catalog();
// Lookup by id or by absolute type letter.
const ConnectedComponentDescriptor& component(const std::string& id_or_type);

// Matrix helpers in the plane coordinates.
ExactMatrix plane_block(const std::vector<int>& planes, const CycNum& a, const CycNum& b, const CycNum& c,
                        const CycNum& d);
ExactMatrix unitary_embedding(const ExactMatrix& a);  // diag(A, conj A)

// Normalizer elements tried by check_st4 on every component.
struct Probe {
    std::string name;
    ExactMatrix mat;
};
const std::vector<Probe>& st4_probes();

// Hodge circles: cocharacters theta of the component torus whose exponents
// on C^6 are +1 on (e1, e2, e3) up to sign per plane, i.e. eigenvalues u, 1/u
// each with multiplicity 3.
struct Cocharacter {
    std::vector<int> weights;    // in torus coordinates
    std::vector<int> exponents;  // on C^6
};

struct HodgeReport {
    std::vector<Cocharacter> circles;
    bool dense = false;
    int generated_dim = 0;  // lattice rank (tori) or Lie closure dimension
};

HodgeReport hodge_circles(const ConnectedComponentDescriptor& c);

// Catalog entry matching a candidate from the Lie-algebra pipeline.
const ConnectedComponentDescriptor* match_candidate(const ConnectedCandidate& cand);

}  // namespace stg
