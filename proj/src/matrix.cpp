#include "stg/matrix.hpp"

#include <deque>
#include <sstream>

namespace stg {

ExactMatrix::ExactMatrix(int n) : n_(n), a_(static_cast<size_t>(n * n)) {}

ExactMatrix ExactMatrix::identity(int n) { return scalar(n, CycNum(1)); }

ExactMatrix ExactMatrix::scalar(int n, const CycNum& s) {
    ExactMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

ExactMatrix ExactMatrix::diag(const std::vector<CycNum>& d) {
    ExactMatrix m(static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<CycNum>>& rows) {
    int n = static_cast<int>(rows.size());
    ExactMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
            throw DimensionMismatch("matrix rows must be square");
        for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

ExactMatrix ExactMatrix::block_diag(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.n_ + b.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.n_; ++i)
        for (int j = 0; j < b.n_; ++j) m(a.n_ + i, a.n_ + j) = b(i, j);
    return m;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.n_ * b.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) {
            if (a(i, j).is_zero()) continue;
            for (int k = 0; k < b.n_; ++k)
                for (int l = 0; l < b.n_; ++l) m(i * b.n_ + k, j * b.n_ + l) = a(i, j) * b(k, l);
        }
    return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& b) const {
    if (n_ != b.n_) throw DimensionMismatch("matrix sum");
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + b.a_[k];
    return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& b) const {
    if (n_ != b.n_) throw DimensionMismatch("matrix difference");
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - b.a_[k];
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& b) const {
    if (n_ != b.n_) throw DimensionMismatch("matrix product");
    ExactMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const CycNum& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                const CycNum& y = b(k, j);
                if (y.is_zero()) continue;
                m(i, j) += x * y;
            }
        }
    return m;
}

ExactMatrix ExactMatrix::operator*(const CycNum& s) const {
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
    return m;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ExactMatrix ExactMatrix::conj() const {
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].conj();
    return m;
}

ExactMatrix ExactMatrix::adjoint() const { return conj().transpose(); }

ExactMatrix ExactMatrix::galois(long a) const {
    ExactMatrix m(n_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].galois(a);
    return m;
}

ExactMatrix ExactMatrix::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ExactMatrix result = identity(n_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

ExactMatrix ExactMatrix::inverse() const {
    // Gauss-Jordan on [M | I].
    ExactMatrix a = *this, inv = identity(n_);
    for (int c = 0; c < n_; ++c) {
        int p = -1;
        for (int r = c; r < n_; ++r)
            if (!a(r, c).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) throw SingularMatrix();
        if (p != c)
            for (int j = 0; j < n_; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        CycNum s = a(c, c).inverse();
        for (int j = 0; j < n_; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (int r = 0; r < n_; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            CycNum f = a(r, c);
            for (int j = 0; j < n_; ++j) {
                if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
                if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

CycNum ExactMatrix::trace() const {
    CycNum t;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

CycNum ExactMatrix::det() const {
    ExactMatrix a = *this;
    CycNum d(1);
    for (int c = 0; c < n_; ++c) {
        int p = -1;
        for (int r = c; r < n_; ++r)
            if (!a(r, c).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) return CycNum(0);
        if (p != c) {
            for (int j = 0; j < n_; ++j) std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        CycNum s = a(c, c).inverse();
        for (int r = c + 1; r < n_; ++r) {
            if (a(r, c).is_zero()) continue;
            CycNum f = a(r, c) * s;
            for (int j = c; j < n_; ++j)
                if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

std::vector<CycNum> ExactMatrix::charpoly() const {
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    std::vector<CycNum> c(static_cast<size_t>(n_ + 1));
    c[static_cast<size_t>(n_)] = CycNum(1);
    ExactMatrix m(n_);
    for (int k = 1; k <= n_; ++k) {
        m = *this * m;
        for (int i = 0; i < n_; ++i) m(i, i) += c[static_cast<size_t>(n_ - k + 1)];
        CycNum t = (*this * m).trace();
        c[static_cast<size_t>(n_ - k)] = -t / CycNum(static_cast<long>(k));
    }
    return c;
}

bool ExactMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool ExactMatrix::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const CycNum& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero()) return false;
        }
    return true;
}

bool ExactMatrix::is_scalar() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) return false;
            if (i == j && (*this)(i, i) != (*this)(0, 0)) return false;
        }
    return true;
}

bool ExactMatrix::is_unitary() const { return (*this * adjoint()).is_identity(); }

bool ExactMatrix::is_anti_hermitian() const { return adjoint() == -*this; }

bool ExactMatrix::is_symplectic() const {
    if (n_ % 2) return false;
    ExactMatrix j = symplectic_form(n_);
    return transpose() * j * *this == j;
}

std::vector<std::complex<double>> ExactMatrix::to_complex() const {
    std::vector<std::complex<double>> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(x.to_complex());
    return out;
}

std::string ExactMatrix::key() const {
    std::string s = std::to_string(n_);
    for (const auto& x : a_) {
        s += '|';
        s += x.key();
    }
    return s;
}

size_t ExactMatrix::hash() const { return std::hash<std::string>()(key()); }

std::string ExactMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

nlohmann::json ExactMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < n_; ++j) row.push_back((*this)(i, j).to_json());
        rows.push_back(row);
    }
    return rows;
}

ExactMatrix ExactMatrix::from_json(const nlohmann::json& j) {
    std::vector<std::vector<CycNum>> rows;
    for (const auto& r : j) {
        std::vector<CycNum> row;
        for (const auto& x : r) row.push_back(x.is_number_integer() ? CycNum(x.get<long>()) : CycNum::from_json(x));
        rows.push_back(std::move(row));
    }
    return from_rows(rows);
}

ExactMatrix symplectic_form(int n) {
    if (n % 2) throw DimensionMismatch("symplectic form needs even dimension");
    int k = n / 2;
    ExactMatrix j(n);
    for (int i = 0; i < k; ++i) {
        j(i, k + i) = CycNum(1);
        j(k + i, i) = CycNum(-1);
    }
    return j;
}

bool check_usp_membership(const ExactMatrix& m) {
    if (m.dim() != 6) throw DimensionMismatch("check_usp_membership expects a 6x6 matrix");
    return m.is_unitary() && m.is_symplectic();
}

// ---------------------------------------------------------------------------

CycVector LinearSpan::reduce(CycVector v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        size_t p = pivots_[r];
        if (v[p].is_zero()) continue;
        CycNum f = v[p];
        const CycVector& row = rows_[r];
        for (size_t j = p; j < width_; ++j)
            if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
}

bool LinearSpan::add(const CycVector& v0) {
    if (v0.size() != width_) throw DimensionMismatch("LinearSpan vector width");
    CycVector v = reduce(v0);
    size_t p = 0;
    while (p < width_ && v[p].is_zero()) ++p;
    if (p == width_) return false;
    CycNum s = v[p].inverse();
    for (size_t j = p; j < width_; ++j)
        if (!v[j].is_zero()) v[j] *= s;
    // Keep rows fully reduced against the new pivot so reduce() stays one pass.
    for (auto& row : rows_) {
        if (row[p].is_zero()) continue;
        CycNum f = row[p];
        for (size_t j = p; j < width_; ++j)
            if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool LinearSpan::contains(const CycVector& v) const {
    CycVector r = reduce(v);
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(std::vector<CycVector>& a, size_t width) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < width && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        CycNum s = a[r][c].inverse();
        for (size_t j = c; j < width; ++j)
            if (!a[r][j].is_zero()) a[r][j] *= s;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            CycNum f = a[i][c];
            for (size_t j = c; j < width; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

}  // namespace

std::vector<CycVector> nullspace(const std::vector<CycVector>& rows, size_t width) {
    for (const auto& r : rows)
        if (r.size() != width) throw DimensionMismatch("nullspace row width");
    std::vector<CycVector> a = rows;
    auto piv = rref(a, width);
    std::vector<bool> is_piv(width, false);
    for (size_t p : piv) is_piv[p] = true;
    std::vector<CycVector> basis;
    for (size_t f = 0; f < width; ++f) {
        if (is_piv[f]) continue;
        CycVector x(width);
        x[f] = CycNum(1);
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

size_t matrix_rank(const std::vector<CycVector>& rows, size_t width) {
    LinearSpan span(width);
    for (const auto& r : rows) span.add(r);
    return span.rank();
}

MatrixAlgebraBasis commutant_basis(const std::vector<ExactMatrix>& generators, int dim) {
    if (dim < 0) {
        if (generators.empty()) throw DimensionMismatch("commutant_basis needs a dimension");
        dim = generators.front().dim();
    }
    for (const auto& g : generators)
        if (g.dim() != dim) throw DimensionMismatch("commutant generators must share a dimension");
    const size_t d = static_cast<size_t>(dim), w = d * d;
    // Unknown X indexed x[i*d+j]. Solve (XG - GX)_{ij} = 0.
    std::vector<CycVector> rows;
    for (const auto& g : generators)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                CycVector row(w);
                bool nz = false;
                for (size_t k = 0; k < d; ++k) {
                    const CycNum& gkj = g(static_cast<int>(k), static_cast<int>(j));
                    if (!gkj.is_zero()) row[i * d + k] += gkj;
                    const CycNum& gik = g(static_cast<int>(i), static_cast<int>(k));
                    if (!gik.is_zero()) row[k * d + j] -= gik;
                }
                for (const auto& x : row) nz = nz || !x.is_zero();
                if (nz) rows.push_back(std::move(row));
            }
    auto ns = nullspace(rows, w);
    MatrixAlgebraBasis out;
    out.ambient_dim = dim;
    for (const auto& v : ns) {
        ExactMatrix m(dim);
        for (size_t k = 0; k < w; ++k) m(static_cast<int>(k / d), static_cast<int>(k % d)) = v[k];
        out.basis.push_back(std::move(m));
    }
    // Verify the span is closed under products.
    auto flat = [&](const ExactMatrix& m) { return CycVector(m.entries().begin(), m.entries().end()); };
    LinearSpan span(w);
    for (const auto& b : out.basis) span.add(flat(b));
    bool closed = true;
    for (size_t a = 0; a < out.basis.size() && closed; ++a)
        for (size_t b = 0; b < out.basis.size() && closed; ++b)
            closed = span.contains(flat(out.basis[a] * out.basis[b]));
    out.closed_under_multiplication = closed;
    return out;
}

int lie_closure(const std::vector<ExactMatrix>& seeds, const std::vector<ExactMatrix>& conjugators) {
    if (seeds.empty()) return 0;
    const int n = seeds.front().dim();
    for (const auto& s : seeds) {
        if (s.dim() != n) throw DimensionMismatch("lie_closure seeds must share a dimension");
        if (!s.is_anti_hermitian()) throw NotAntiHermitian();
    }
    std::vector<ExactMatrix> inv;
    for (const auto& g : conjugators) {
        if (g.dim() != n) throw DimensionMismatch("lie_closure conjugator dimension");
        inv.push_back(g.inverse());
    }
    const size_t w = static_cast<size_t>(2 * n * n);
    // Real coordinates: real and imaginary parts of every entry.
    auto coords = [&](const ExactMatrix& m) {
        CycVector v;
        v.reserve(w);
        for (const auto& x : m.entries()) {
            v.push_back(x.re());
            v.push_back(x.im());
        }
        return v;
    };
    LinearSpan span(w);
    std::vector<ExactMatrix> basis;
    std::deque<ExactMatrix> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        ExactMatrix x = std::move(queue.front());
        queue.pop_front();
        if (!span.add(coords(x))) continue;
        for (size_t k = 0; k < conjugators.size(); ++k) queue.push_back(conjugators[k] * x * inv[k]);
        for (const auto& b : basis) {
            ExactMatrix br = x * b - b * x;
            if (!br.is_zero()) queue.push_back(std::move(br));
        }
        basis.push_back(std::move(x));
    }
    return static_cast<int>(basis.size());
}

}  // namespace stg
