#pragma once
// Executable Sato-Tate axioms (ST1)-(ST4) for candidates G = union of cosets A G0.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stg/catalog.hpp"
#include "stg/group.hpp"

namespace stg {

struct ExactAverageUnsupported : std::invalid_argument {
    explicit ExactAverageUnsupported(const std::string& id)
        : std::invalid_argument("exact coset averages are not implemented for " + id) {}
};

// Integer combination of a1^j (L2)^k (L3)^l with j + 2k + 3l <= 6, where a1,
// L2, L3 are the traces on C^6, Lambda^2 C^6 and Lambda^3 C^6.
struct CharacterTerm {
    long coef = 1;
    int j = 0, k = 0, l = 0;
};

struct CharacterSpec {
    std::string name;
    std::vector<CharacterTerm> terms;

    int max_degree() const;
    static CharacterSpec a1();
    static CharacterSpec a1_squared();
    static CharacterSpec sym2();  // a1^2 - L2
    static CharacterSpec lambda2();
    static CharacterSpec lambda3();
    static CharacterSpec lambda2_squared();
    static CharacterSpec a1_lambda2();
    static CharacterSpec parse(const std::string& name);  // one of the names above
};

// a1, a1^2, Sym^2, Lambda^2, Lambda^3, (Lambda^2)^2, a1 Lambda^2.
const std::vector<CharacterSpec>& default_character_family();

// A candidate closed subgroup: the identity component plus one representative
// per connected component (the identity first).
struct CandidateGroup {
    const ConnectedComponentDescriptor* component = nullptr;
    std::vector<ExactMatrix> coset_reps;
    std::string component_group_label;
};

// Antilinear 3x3 element (B, 1) of the U(1)_3 normalizer as a 6x6 matrix.
ExactMatrix embed_u13_element(const GroupElement& e);

// Exact Haar average of chi over the coset A G0. Requires every factor to be
// U(1) or SU(2); throws ExactAverageUnsupported otherwise.
CycNum coset_character_average(const ConnectedComponentDescriptor& c, const ExactMatrix& coset_rep,
                               const CharacterSpec& chi);
// Several characters at once, sharing the expansion of e1, e2, e3.
std::vector<CycNum> coset_character_averages(const ConnectedComponentDescriptor& c, const ExactMatrix& coset_rep,
                                             const std::vector<CharacterSpec>& family);

enum class AverageMode { Exact, MonteCarlo, Auto };
AverageMode parse_mode(const std::string& s);
std::string to_string(AverageMode m);

struct McOptions {
    uint64_t seed = 42;
    long samples = 100000;
};

struct CosetAverage {
    int coset = 0;
    std::string character;
    bool exact = true;
    std::optional<CycNum> value;  // exact mode
    double mean = 0, mean_imag = 0, std_error = 0;  // mc mode
    bool integral = false;
};

struct ST3Report {
    bool pass = true;
    std::vector<CosetAverage> averages;
    nlohmann::json to_json() const;
};

// With fail_fast, stops after the first coset with a non-integral average.
ST3Report check_st3(const CandidateGroup& g, const std::vector<CharacterSpec>& family = default_character_family(),
                    AverageMode mode = AverageMode::Auto, const McOptions& mc = {}, bool fail_fast = false);

struct ST4Report {
    bool pass = false;
    int commutant_dim = 0;
    int fixer_dim = 0;  // complex dimension of the fixer Lie algebra in sp6(C)
    int component_dim = 0;
    std::vector<std::string> escaping_probes;
    nlohmann::json to_json() const;
};

ST4Report check_st4(const ConnectedComponentDescriptor& c);

struct AxiomReport {
    bool st1 = false, st2 = false, st3 = false, st4 = false;
    std::vector<int> st1_failures;  // coset indices outside USp(6) or not normalizing G0
    HodgeReport hodge;
    ST3Report st3_report;
    ST4Report st4_report;
    bool pass() const { return st1 && st2 && st3 && st4; }
    nlohmann::json to_json() const;
};

// True iff a A^-1 maps each test generator of G0 into G0.
bool normalizes(const ConnectedComponentDescriptor& c, const ExactMatrix& a);

AxiomReport check_candidate(const CandidateGroup& g, AverageMode mode = AverageMode::Auto, const McOptions& mc = {});

}  // namespace stg
