#pragma once

#include <vector>

#include "esym/ring.hpp"

namespace esym {

// Dense exact matrix over a single ring. Values are immutable after
// construction; all operations are pure.
class Matrix {
public:
    Matrix(RingPtr ring, int nrows, int ncols, std::vector<RingElement> entries);

    static Matrix identity(const RingPtr& ring, int n);
    static Matrix zero(const RingPtr& ring, int nrows, int ncols);

    const RingPtr& ring() const { return ring_; }
    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }

    const RingElement& at(int r, int c) const { return entries_[std::size_t(r) * ncols_ + c]; }
    Matrix with_entry(int r, int c, RingElement v) const; // copy with one entry replaced

    bool is_square() const { return nrows_ == ncols_; }
    bool is_identity() const;

    Matrix transpose() const;

    std::string to_string() const;

private:
    RingPtr ring_;
    int nrows_ = 0, ncols_ = 0;
    std::vector<RingElement> entries_; // row-major
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
bool operator==(const Matrix& a, const Matrix& b);
inline bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

// scalar * matrix
Matrix scale(const RingElement& c, const Matrix& m);

// Determinant. Fraction-free (Bareiss) elimination over integral domains,
// division-free Berkowitz otherwise (capped at 16x16 — size_limit_exceeded).
RingElement det(const Matrix& m);

// the two paths individually, for cross-checking
RingElement det_bareiss(const Matrix& m);
RingElement det_berkowitz(const Matrix& m);

// true iff every entry of a - b lies in the ideal
bool congruent_mod(const Matrix& a, const Matrix& b, const Ideal& ideal);

// true iff m^t * form * m == form (both square, equal even size)
bool is_symplectic(const Matrix& m, const Matrix& form);

// rows as 1xN matrices are clumsy; a thin row type is shared across modules
struct Row {
    RingPtr ring;
    std::vector<RingElement> entries;

    std::size_t size() const { return entries.size(); }
    const RingElement& operator[](std::size_t i) const { return entries[i]; }
    RingElement& operator[](std::size_t i) { return entries[i]; }
    bool operator==(const Row& o) const;
};

Row row_of(const RingPtr& ring, std::vector<RingElement> entries);
Row unit_row(const RingPtr& ring, std::size_t n, std::size_t index); // e_{index+1}

// A row with an optional inner-product witness and an optional relative
// ideal; validate() checks both claims when present.
struct UnimodularRow {
    Row row;
    std::optional<Row> witness;          // <row, witness> = 1
    std::optional<Ideal> relative_ideal; // row ≡ e1 mod ideal

    void validate() const;
};
RingElement inner_product(const Row& a, const Row& b);
Row operator*(const Row& v, const Matrix& m);
Row operator+(const Row& a, const Row& b);
Row scale(const RingElement& c, const Row& v);
// column vector v^t * row w as an n x n matrix
Matrix outer_product(const Row& v, const Row& w);
bool row_congruent_mod(const Row& a, const Row& b, const Ideal& ideal);

} // namespace esym
