#pragma once
// Conjugacy of finite subgroups inside an ambient group.
//
// Projective subgroups of PSU(3) (possibly extended by antiunitary elements)
// are compared through their full preimages in SU(3), extended abstractly by
// a lift of one antiunitary element. Two such groups are conjugate iff there
// is a grading-preserving isomorphism of the lifts under which the unitary
// characters agree (or agree after complex conjugation, when the ambient
// group itself contains complex conjugation).

#include <memory>
#include <string>
#include <vector>

#include "stg/group.hpp"

namespace stg {

// Process-wide interner of exact values, used to turn traces into integer labels.
class ValueInterner {
public:
    static ValueInterner& global();
    int id(const CycNum& x);
    int conj_id(int id);
    CycNum value(int id) const;

private:
    ValueInterner();
    struct Impl;
    std::shared_ptr<Impl> impl_;
    Impl& impl();
    const Impl& impl() const;
};

// Projective normalization: divide by the first nonzero entry.
GroupElement projective_normalize(const GroupElement& e);

// Full preimage in SU(3) of the image of a 3x3 group in PSU(3) (or of its
// unitary part), extended by one antiunitary lift when the group has
// antilinear elements. Elements: index x + eps * n0, with x in the unitary
// lift and eps = 1 meaning x * t for the chosen antiunitary lift t.
class ProjectiveLift {
public:
    explicit ProjectiveLift(const FiniteMatrixGroup& g);

    const CayleyGroup& table() const { return table_; }
    int order() const { return table_.order(); }
    int unitary_order() const { return n0_; }
    bool has_antiunitary() const { return table_.order() > n0_; }
    const FiniteMatrixGroup& unitary_lift() const { return *unitary_; }

    // Trace labels; antiunitary elements get label -1.
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<int>& conj_labels() const { return conj_labels_; }
    // Preimage of a subgroup of the source group.
    Bits lift_of(const Bits& sub) const;
    // Trace of a unitary lifted element.
    CycNum trace(int x) const;

private:
    std::shared_ptr<FiniteMatrixGroup> unitary_;
    int n0_ = 0;
    CayleyGroup table_;
    std::vector<int> labels_, conj_labels_;
    std::vector<int> proj_of_lift_;    // lifted element -> projective class id
    std::vector<int> proj_of_source_;  // source element -> projective class id
};

// True iff lifted subgroups s1 of l1 and s2 of l2 are conjugate in SU(3)
// (or in SU(3) extended by complex conjugation, when allow_conj).
bool lifts_conjugate(const ProjectiveLift& l1, const Bits& s1, const ProjectiveLift& l2, const Bits& s2,
                     bool allow_conj);

enum class AmbientKind { Finite, PSU3, PSU3xC2, SO3 };

struct AmbientModel {
    AmbientKind kind = AmbientKind::Finite;
    std::shared_ptr<const FiniteMatrixGroup> group;  // Finite only

    static AmbientModel finite(FiniteMatrixGroup g);
    static AmbientModel wreath();  // C2 wr S3 as signed permutations
    static AmbientModel psu3() { return {AmbientKind::PSU3, nullptr}; }
    static AmbientModel psu3_c2() { return {AmbientKind::PSU3xC2, nullptr}; }
    static AmbientModel so3() { return {AmbientKind::SO3, nullptr}; }
};

// For the finite model, h1 and h2 must be subgroups of the ambient group.
// For PSU3 models they are 3x3 groups taken modulo scalars; for SO3 they are
// real orthogonal 3x3 groups.
bool ambient_subgroup_conjugate(const FiniteMatrixGroup& h1, const FiniteMatrixGroup& h2, const AmbientModel& amb);

}  // namespace stg
