#pragma once
// Square matrices over CycNum and the exact linear algebra built on them.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stg/cyclotomic.hpp"

namespace stg {

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("matrix is singular") {}
};

struct NotAntiHermitian : std::invalid_argument {
    NotAntiHermitian() : std::invalid_argument("lie_closure seed is not anti-Hermitian") {}
};

using CycVector = std::vector<CycNum>;

class ExactMatrix {
public:
    ExactMatrix() = default;
    explicit ExactMatrix(int n);  // zero matrix
    static ExactMatrix identity(int n);
    static ExactMatrix scalar(int n, const CycNum& s);
    static ExactMatrix diag(const std::vector<CycNum>& d);
    static ExactMatrix from_rows(const std::vector<std::vector<CycNum>>& rows);
    static ExactMatrix block_diag(const ExactMatrix& a, const ExactMatrix& b);
    static ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

    int dim() const { return n_; }
    CycNum& operator()(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }
    const CycNum& operator()(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    const std::vector<CycNum>& entries() const { return a_; }

    ExactMatrix operator+(const ExactMatrix& b) const;
    ExactMatrix operator-(const ExactMatrix& b) const;
    ExactMatrix operator*(const ExactMatrix& b) const;
    ExactMatrix operator*(const CycNum& s) const;
    ExactMatrix operator-() const;
    bool operator==(const ExactMatrix& b) const { return n_ == b.n_ && a_ == b.a_; }
    bool operator!=(const ExactMatrix& b) const { return !(*this == b); }

    ExactMatrix transpose() const;
    ExactMatrix conj() const;     // entrywise complex conjugate
    ExactMatrix adjoint() const;  // conjugate transpose
    ExactMatrix galois(long a) const;
    ExactMatrix pow(long e) const;
    ExactMatrix inverse() const;
    CycNum trace() const;
    CycNum det() const;
    // Coefficients of det(xI - M), constant term first, leading 1 last.
    std::vector<CycNum> charpoly() const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_scalar() const;
    bool is_unitary() const;
    bool is_anti_hermitian() const;
    // transpose(M) J M = J for the block form J = [[0, I], [-I, 0]].
    bool is_symplectic() const;

    std::vector<std::complex<double>> to_complex() const;  // row-major
    std::string key() const;
    size_t hash() const;
    std::string str() const;

    nlohmann::json to_json() const;
    static ExactMatrix from_json(const nlohmann::json& j);

private:
    int n_ = 0;
    std::vector<CycNum> a_;
};

// J = [[0, I_k], [-I_k, 0]] with n = 2k.
ExactMatrix symplectic_form(int n = 6);

// Unitary and symplectic; requires dim 6.
bool check_usp_membership(const ExactMatrix& m);

// Incremental row echelon form over the cyclotomic field.
class LinearSpan {
public:
    explicit LinearSpan(size_t width) : width_(width) {}
    // Adds v; returns true if it was independent of the current span.
    bool add(const CycVector& v);
    bool contains(const CycVector& v) const;
    size_t rank() const { return rows_.size(); }
    size_t width() const { return width_; }

private:
    size_t width_;
    std::vector<CycVector> rows_;  // reduced, each with pivot entry 1
    std::vector<size_t> pivots_;
    CycVector reduce(CycVector v) const;
};

// Basis of {x : A x = 0} for A given as rows of equal width.
std::vector<CycVector> nullspace(const std::vector<CycVector>& rows, size_t width);
size_t matrix_rank(const std::vector<CycVector>& rows, size_t width);

struct MatrixAlgebraBasis {
    int ambient_dim = 0;
    std::vector<ExactMatrix> basis;
    bool closed_under_multiplication = false;  // set only once verified
    size_t dimension() const { return basis.size(); }
};

MatrixAlgebraBasis commutant_basis(const std::vector<ExactMatrix>& generators, int dim = -1);

// Dimension of the real Lie algebra generated by Ad(g)s for all seeds s and
// all words g in the conjugators, closed under brackets.
int lie_closure(const std::vector<ExactMatrix>& seeds, const std::vector<ExactMatrix>& conjugators);

}  // namespace stg

template <>
struct std::hash<stg::ExactMatrix> {
    size_t operator()(const stg::ExactMatrix& m) const { return m.hash(); }
};
