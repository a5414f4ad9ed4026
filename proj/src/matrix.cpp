#include "esym/matrix.hpp"

#include <sstream>

namespace esym {

namespace {

constexpr int kSymbolicCap = 64;   // covers the r <= 6 forms
constexpr int kBerkowitzCap = 16;  // division-free determinant bound

void require_same_ring(const Matrix& a, const Matrix& b) {
    if (!a.ring()->equals(*b.ring())) throw ring_mismatch("matrices over different rings");
}

} // namespace

Matrix::Matrix(RingPtr ring, int nrows, int ncols, std::vector<RingElement> entries)
    : ring_(std::move(ring)), nrows_(nrows), ncols_(ncols), entries_(std::move(entries)) {
    if (nrows_ <= 0 || ncols_ <= 0 || entries_.size() != std::size_t(nrows_) * ncols_)
        throw dimension_mismatch("matrix shape does not match entry count");
    if (ring_->kind() == RingKind::Poly && (nrows_ > kSymbolicCap || ncols_ > kSymbolicCap))
        throw size_limit_exceeded("symbolic matrices are capped at 64x64");
    for (const auto& e : entries_)
        if (!e.ring()->equals(*ring_)) throw ring_mismatch("matrix entry in a foreign ring");
}

Matrix Matrix::identity(const RingPtr& ring, int n) {
    std::vector<RingElement> e;
    e.reserve(std::size_t(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) e.push_back(r == c ? ring->one() : ring->zero());
    return Matrix(ring, n, n, std::move(e));
}

Matrix Matrix::zero(const RingPtr& ring, int nrows, int ncols) {
    return Matrix(ring, nrows, ncols,
                  std::vector<RingElement>(std::size_t(nrows) * ncols, ring->zero()));
}

Matrix Matrix::with_entry(int r, int c, RingElement v) const {
    std::vector<RingElement> e = entries_;
    e[std::size_t(r) * ncols_ + c] = std::move(v);
    return Matrix(ring_, nrows_, ncols_, std::move(e));
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    return *this == identity(ring_, nrows_);
}

Matrix Matrix::transpose() const {
    std::vector<RingElement> e;
    e.reserve(entries_.size());
    for (int c = 0; c < ncols_; ++c)
        for (int r = 0; r < nrows_; ++r) e.push_back(at(r, c));
    return Matrix(ring_, ncols_, nrows_, std::move(e));
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < nrows_; ++r) {
        os << "[";
        for (int c = 0; c < ncols_; ++c) {
            if (c) os << ", ";
            os << at(r, c).to_string();
        }
        os << "]\n";
    }
    return os.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b);
    if (a.ncols() != b.nrows()) throw dimension_mismatch("matrix product shape mismatch");
    std::vector<RingElement> e;
    e.reserve(std::size_t(a.nrows()) * b.ncols());
    for (int r = 0; r < a.nrows(); ++r) {
        for (int c = 0; c < b.ncols(); ++c) {
            RingElement s = a.ring()->zero();
            for (int k = 0; k < a.ncols(); ++k) s = s + a.at(r, k) * b.at(k, c);
            e.push_back(std::move(s));
        }
    }
    return Matrix(a.ring(), a.nrows(), b.ncols(), std::move(e));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b);
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols())
        throw dimension_mismatch("matrix sum shape mismatch");
    std::vector<RingElement> e;
    e.reserve(std::size_t(a.nrows()) * a.ncols());
    for (int r = 0; r < a.nrows(); ++r)
        for (int c = 0; c < a.ncols(); ++c) e.push_back(a.at(r, c) + b.at(r, c));
    return Matrix(a.ring(), a.nrows(), a.ncols(), std::move(e));
}

Matrix operator-(const Matrix& a) { return scale(-a.ring()->one(), a); }
Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

bool operator==(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b);
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) return false;
    for (int r = 0; r < a.nrows(); ++r)
        for (int c = 0; c < a.ncols(); ++c)
            if (a.at(r, c) != b.at(r, c)) return false;
    return true;
}

Matrix scale(const RingElement& c, const Matrix& m) {
    std::vector<RingElement> e;
    e.reserve(std::size_t(m.nrows()) * m.ncols());
    for (int r = 0; r < m.nrows(); ++r)
        for (int col = 0; col < m.ncols(); ++col) e.push_back(c * m.at(r, col));
    return Matrix(m.ring(), m.nrows(), m.ncols(), std::move(e));
}

// ---------------------------------------------------------------------------
// Determinants
// ---------------------------------------------------------------------------

RingElement det_bareiss(const Matrix& m) {
    if (!m.is_square()) throw dimension_mismatch("determinant of a non-square matrix");
    if (!m.ring()->is_integral_domain())
        throw internal_check_failed("Bareiss requires an integral domain");
    const int n = m.nrows();
    const RingPtr& R = m.ring();
    std::vector<RingElement> a;
    a.reserve(std::size_t(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a.push_back(m.at(r, c));
    auto at = [&](int r, int c) -> RingElement& { return a[std::size_t(r) * n + c]; };

    bool negate = false;
    RingElement prev = R->one();
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k).is_zero()) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (!at(r, k).is_zero()) { p = r; break; }
            if (p < 0) return R->zero(); // column is zero from the pivot down
            for (int c = k; c < n; ++c) std::swap(at(k, c), at(p, c));
            negate = !negate;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c)
                at(r, c) = exact_div(at(k, k) * at(r, c) - at(r, k) * at(k, c), prev);
            at(r, k) = R->zero();
        }
        prev = at(k, k);
    }
    RingElement d = at(n - 1, n - 1);
    return negate ? -d : d;
}

// Berkowitz: characteristic polynomial coefficients assembled from Toeplitz
// products of principal-minor data; O(n^4) ring operations, no division.
RingElement det_berkowitz(const Matrix& m) {
    if (!m.is_square()) throw dimension_mismatch("determinant of a non-square matrix");
    const int n = m.nrows();
    if (n > kBerkowitzCap)
        throw size_limit_exceeded("division-free determinant is capped at 16x16");
    const RingPtr& R = m.ring();
    const RingElement zero = R->zero();

    // p holds the coefficients of det(xI - A_k) for the leading k x k block,
    // highest power first; start with k = 1.
    std::vector<RingElement> p{R->one(), -m.at(0, 0)};
    for (int k = 2; k <= n; ++k) {
        const int mm = k - 1; // size of the previous leading block
        // u starts as the column (a_{1k}..a_{mm,k}); w_i = row_k . M^i . u
        std::vector<RingElement> u;
        u.reserve(mm);
        for (int r = 0; r < mm; ++r) u.push_back(m.at(r, k - 1));
        std::vector<RingElement> w;
        w.reserve(mm);
        for (int i = 0; i < mm; ++i) {
            RingElement s = zero;
            for (int c = 0; c < mm; ++c) s = s + m.at(k - 1, c) * u[c];
            w.push_back(std::move(s));
            if (i + 1 < mm) {
                std::vector<RingElement> nu;
                nu.reserve(mm);
                for (int r = 0; r < mm; ++r) {
                    RingElement s2 = zero;
                    for (int c = 0; c < mm; ++c) s2 = s2 + m.at(r, c) * u[c];
                    nu.push_back(std::move(s2));
                }
                u = std::move(nu);
            }
        }
        // lower-triangular Toeplitz multiply, first column (1, -a_kk, -w_0, ...)
        std::vector<RingElement> col{R->one(), -m.at(k - 1, k - 1)};
        for (auto& wi : w) col.push_back(-wi);
        std::vector<RingElement> q(std::size_t(k) + 1, zero);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j <= i && j < p.size(); ++j)
                if (i - j < col.size()) q[i] = q[i] + col[i - j] * p[j];
        p = std::move(q);
    }
    // det(xI - A) at x = 0 equals (-1)^n det(A)
    RingElement c0 = p.back();
    return (n % 2 == 0) ? c0 : -c0;
}

RingElement det(const Matrix& m) {
    if (!m.is_square()) throw dimension_mismatch("determinant of a non-square matrix");
    if (m.ring()->is_integral_domain()) return det_bareiss(m);
    return det_berkowitz(m);
}

// ---------------------------------------------------------------------------
// Congruence and symplecticity
// ---------------------------------------------------------------------------

bool congruent_mod(const Matrix& a, const Matrix& b, const Ideal& ideal) {
    require_same_ring(a, b);
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols())
        throw dimension_mismatch("congruence of different shapes");
    for (int r = 0; r < a.nrows(); ++r)
        for (int c = 0; c < a.ncols(); ++c)
            if (!ideal_contains(ideal, a.at(r, c) - b.at(r, c))) return false;
    return true;
}

bool is_symplectic(const Matrix& m, const Matrix& form) {
    if (!m.is_square() || !form.is_square() || m.nrows() != form.nrows())
        throw dimension_mismatch("matrix and form sizes differ");
    if (m.nrows() % 2 != 0) throw dimension_mismatch("symplectic size must be even");
    return m.transpose() * form * m == form;
}

// ---------------------------------------------------------------------------
// Rows
// ---------------------------------------------------------------------------

bool Row::operator==(const Row& o) const {
    if (entries.size() != o.entries.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] != o.entries[i]) return false;
    return true;
}

Row row_of(const RingPtr& ring, std::vector<RingElement> entries) {
    for (const auto& e : entries)
        if (!e.ring()->equals(*ring)) throw ring_mismatch("row entry in a foreign ring");
    return Row{ring, std::move(entries)};
}

Row unit_row(const RingPtr& ring, std::size_t n, std::size_t index) {
    std::vector<RingElement> e(n, ring->zero());
    e[index] = ring->one();
    return Row{ring, std::move(e)};
}

void UnimodularRow::validate() const {
    if (witness) {
        if (inner_product(row, *witness) != row.ring->one())
            throw witness_invalid("witness inner product is not 1");
    }
    if (relative_ideal) {
        if (!row_congruent_mod(row, unit_row(row.ring, row.size(), 0), *relative_ideal))
            throw error("row is not congruent to e1 mod the relative ideal");
    }
}

RingElement inner_product(const Row& a, const Row& b) {
    if (a.size() != b.size()) throw dimension_mismatch("inner product length mismatch");
    RingElement s = a.ring->zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}

Row operator*(const Row& v, const Matrix& m) {
    if (int(v.size()) != m.nrows()) throw dimension_mismatch("row*matrix length mismatch");
    std::vector<RingElement> e;
    e.reserve(m.ncols());
    for (int c = 0; c < m.ncols(); ++c) {
        RingElement s = v.ring->zero();
        for (int r = 0; r < m.nrows(); ++r) s = s + v[r] * m.at(r, c);
        e.push_back(std::move(s));
    }
    return Row{v.ring, std::move(e)};
}

Row operator+(const Row& a, const Row& b) {
    if (a.size() != b.size()) throw dimension_mismatch("row sum length mismatch");
    std::vector<RingElement> e;
    e.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e.push_back(a[i] + b[i]);
    return Row{a.ring, std::move(e)};
}

Row scale(const RingElement& c, const Row& v) {
    std::vector<RingElement> e;
    e.reserve(v.size());
    for (const auto& x : v.entries) e.push_back(c * x);
    return Row{v.ring, std::move(e)};
}

Matrix outer_product(const Row& v, const Row& w) {
    std::vector<RingElement> e;
    e.reserve(v.size() * w.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < w.size(); ++c) e.push_back(v[r] * w[c]);
    return Matrix(v.ring, int(v.size()), int(w.size()), std::move(e));
}

bool row_congruent_mod(const Row& a, const Row& b, const Ideal& ideal) {
    if (a.size() != b.size()) throw dimension_mismatch("congruence of different lengths");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!ideal_contains(ideal, a[i] - b[i])) return false;
    return true;
}

} // namespace esym
