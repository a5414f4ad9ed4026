#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "esym/errors.hpp"
#include "esym/rng.hpp"

namespace esym {

class Ring;
class RingElement;
struct Ideal;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind { Integers, Modular, Poly, Excision, ExcisionZ };

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials, graded-lexicographic term order.
// The order is fixed once so equality and serialization are canonical.
// ---------------------------------------------------------------------------

struct Monomial {
    std::vector<std::uint32_t> exp;

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (auto e : exp) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exp == o.exp; }
};

// graded-lex: compare total degree first, then exponent vectors lexicographically
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        return a.exp > b.exp;
    }
};

struct Poly {
    // leading term first; no zero coefficients stored
    std::map<Monomial, mpz_class, GrlexGreater> terms;

    bool operator==(const Poly& o) const { return terms == o.terms; }
};

// Excision pair (first, second): first lives in the base ring (or Z for
// ExcisionZ), second in the ring carrying the ideal. Elements are immutable,
// so structural sharing via shared_ptr is safe.
struct ExcisionPair {
    std::shared_ptr<const RingElement> first;
    std::shared_ptr<const RingElement> second;
};

class RingElement {
public:
    RingElement() = default;

    const RingPtr& ring() const { return ring_; }

    const mpz_class& as_int() const { return std::get<mpz_class>(payload_); }
    const Poly& as_poly() const { return std::get<Poly>(payload_); }
    const ExcisionPair& as_pair() const { return std::get<ExcisionPair>(payload_); }

    bool is_zero() const;
    std::string to_string() const;

private:
    friend class Ring;
    friend RingElement operator+(const RingElement&, const RingElement&);
    friend RingElement operator*(const RingElement&, const RingElement&);
    friend RingElement operator-(const RingElement&);
    friend bool operator==(const RingElement&, const RingElement&);
    friend RingElement exact_div(const RingElement&, const RingElement&);

    RingElement(RingPtr r, std::variant<mpz_class, Poly, ExcisionPair> p)
        : ring_(std::move(r)), payload_(std::move(p)) {}

    RingPtr ring_;
    std::variant<mpz_class, Poly, ExcisionPair> payload_;
};

struct Ideal {
    RingPtr ring;
    std::vector<RingElement> generators; // nonempty

    bool equals(const Ideal& other) const;
};

// ---------------------------------------------------------------------------
// Ring descriptors. The supported list is closed: every downstream algorithm
// needs decidable equality, and ideal membership where it is claimed.
// ---------------------------------------------------------------------------

class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingPtr integers();
    static RingPtr modular(const mpz_class& modulus);
    static RingPtr poly(RingPtr base, std::vector<std::string> variables);
    // base ⊕ I with (a,i)(b,j) = (ab, aj+ib+ij), I an ideal of base
    static RingPtr excision(RingPtr base, Ideal ideal);
    // Z ⊕ I with the same multiplication, I an ideal of the host ring
    static RingPtr excision_z(RingPtr host, Ideal ideal);

    RingKind kind() const { return kind_; }
    const mpz_class& modulus() const { return modulus_; }
    // Poly: coefficient ring; Excision: base ring; ExcisionZ: host ring
    const RingPtr& base() const { return base_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const Ideal& ideal() const { return *ideal_; }

    bool equals(const Ring& other) const;
    bool is_finite() const;
    // true only where exact division is available for fraction-free elimination
    bool is_integral_domain() const;
    std::string to_string() const;

    // element factories
    RingElement zero() const;
    RingElement one() const;
    RingElement from_int(long v) const;
    RingElement from_mpz(const mpz_class& v) const;
    RingElement variable(std::size_t index) const;          // Poly only
    RingElement constant(const RingElement& c) const;       // Poly only: embed base elt
    RingElement from_poly(Poly p) const;                     // Poly only (normalizes)
    // Excision/ExcisionZ: first in base (Integers element for ExcisionZ),
    // second in the ideal's ring; membership of second is checked when decidable.
    RingElement make_pair(const RingElement& first, const RingElement& second) const;

    RingElement random_element(Rng& rng) const;

private:
    Ring() = default;

    RingKind kind_ = RingKind::Integers;
    mpz_class modulus_;
    RingPtr base_;
    std::vector<std::string> variables_;
    std::shared_ptr<const Ideal> ideal_;
};

// exact ring arithmetic; both operands must belong to the same ring
RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(const RingElement& a, const RingElement& b);
bool operator==(const RingElement& a, const RingElement& b);
bool operator!=(const RingElement& a, const RingElement& b);
RingElement pow(const RingElement& a, std::uint64_t e);

// Exact division, defined only over integral domains and only when b | a;
// internal_check_failed if the division leaves a remainder.
RingElement exact_div(const RingElement& a, const RingElement& b);

// Decides x ∈ I exactly for the supported ring/ideal combinations, raising
// unsupported_membership otherwise.
bool ideal_contains(const Ideal& ideal, const RingElement& x);

// Bezout-style witness c with Σ c_k·gen_k = x, for the Euclidean cases
// (Integers, Modular, univariate Poly over a prime field). nullopt when x ∉ I.
std::optional<std::vector<RingElement>> ideal_witness(const Ideal& ideal,
                                                      const RingElement& x);

// whether ideal membership is decidable for this ideal (without raising)
bool membership_decidable(const Ideal& ideal);

// f : Z ⊕ I → host, (m, i) ↦ m + i
RingElement hom_f(const RingElement& x);
// g : R ⊕ I → R, (x, i) ↦ x + i
RingElement hom_g(const RingElement& x);
// section of g: x ↦ (x, 0)
RingElement section_g(const RingPtr& excision_ring, const RingElement& x);

bool is_prime_modulus(const mpz_class& m);

} // namespace esym
