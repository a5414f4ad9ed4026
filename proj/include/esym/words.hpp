#pragma once

#include <optional>
#include <variant>

#include "esym/forms.hpp"
#include "esym/matrix.hpp"

namespace esym {

enum class Flavor { Linear, Symplectic };

// A single generator letter. Indices are 1-based to match the customary
// E_ij / se_ij notation; size is the matrix size n (even for SymplElem).
struct Generator {
    enum class Kind { Elem, SymplElem, DiagSign };
    Kind kind;
    int i = 0, j = 0; // DiagSign uses only j
    RingElement param;
    int size = 0;
};

struct GroupWord;

// conjugation frame: evaluates to eval(outer) * eval(inner) * eval(outer)^-1
struct ConjFrame {
    std::shared_ptr<const GroupWord> outer;
    std::shared_ptr<const GroupWord> inner;
};

using Letter = std::variant<Generator, ConjFrame>;

struct GroupWord {
    int size = 0;
    RingPtr ring;
    Flavor flavor = Flavor::Linear;
    std::vector<Letter> letters;
    // When set, the word is a certificate of membership in the relative group:
    // every bare letter's parameter and every ConjFrame's innermost parameters
    // must lie in this ideal (normal-closure definition, tracked syntactically).
    std::optional<Ideal> relative_ideal;

    static GroupWord empty(RingPtr ring, int size, Flavor flavor);
    GroupWord& append(Generator g);
    GroupWord& append(ConjFrame f);
};

// paired index: sigma(2i) = 2i-1, sigma(2i-1) = 2i (1-based)
int sigma_pair(int i, int size);

// E_ij(lambda) = I + lambda e_ij
Matrix elem_gen(int i, int j, const RingElement& lambda, int n);

// se_ij(z): I + z e_ij when i = sigma(j); otherwise the two-term formula
// I + z e_ij - (-1)^{i+j} z e_{sigma(j) sigma(i)}, applied for either order of
// i and j. Every emitted matrix is verified to preserve the standard form.
Matrix sympl_gen(int i, int j, const RingElement& z, int n);

// delta_j: identity with the (j,j) entry replaced by -1
Matrix diag_sign(int j, const RingPtr& ring, int n);

Matrix letter_matrix(const Letter& l, const RingPtr& ring);
Matrix word_eval(const GroupWord& w);
GroupWord word_inverse(const GroupWord& w);

// generator letters as word letters
Generator elem_letter(int i, int j, RingElement lambda, int n);
Generator sympl_letter(int i, int j, RingElement z, int n);
Generator diag_letter(int j, const RingPtr& ring, int n);

// the transposition (i j) as E_ji(1) E_ij(-1) E_ji(1) delta_j
GroupWord transposition_word(int i, int j, const RingPtr& ring, int n);

// Validates the syntactic relative-membership certificate: every innermost
// generator parameter lies in the word's relative ideal. Raises when invalid.
void validate_relative(const GroupWord& w);

// random words for tests and the acceptance suite
GroupWord random_word(const RingPtr& ring, int size, Flavor flavor, int length, Rng& rng);
// random relative word: conjugated ideal-parameter letters w g w^-1
GroupWord random_relative_word(const RingPtr& ring, int size, Flavor flavor,
                               const Ideal& ideal, int length, Rng& rng);

} // namespace esym
