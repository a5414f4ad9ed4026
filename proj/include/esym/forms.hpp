#pragma once

#include "esym/matrix.hpp"

namespace esym {

// Signed monomial permutation: column j carries sign[j] at row images[j]
// (1-indexed images externally, 0-indexed storage). With this convention the
// matrix of a composition is the product of the matrices.
struct SignedPermutation {
    std::vector<std::size_t> images; // images[j] = image of j (0-indexed)
    std::vector<int> signs;          // each +1 or -1

    std::size_t size() const { return images.size(); }
    Matrix to_matrix(const RingPtr& ring) const;
};

// the standard alternating form psi_n of size 2n
Matrix standard_form(const RingPtr& ring, int n);

// v-hat = v * psi; defined for rows of even length
Row hat(const Row& v);

// the recursive form J_r of size 2^r, 0 <= r <= 6
Matrix j_form(const RingPtr& ring, int r);

// A true (unsigned) permutation sigma with sigma * J_r * sigma^t equal to the
// standard form, for the antisymmetric cases r = 1, 2 mod 4 (r <= 6). Computed
// by pairing each index with its partner in J_r, orienting each pair so the +1
// entry lands in the (2i-1, 2i) slot, and ordering pairs by minimum element.
SignedPermutation sigma_jr(int r);

// A second valid conjugator (pairs taken in reverse order). Distinct from
// sigma_jr(r) whenever there is more than one pair; used to confirm that
// downstream verdicts do not depend on the particular choice.
SignedPermutation sigma_jr_alternative(int r);

} // namespace esym
