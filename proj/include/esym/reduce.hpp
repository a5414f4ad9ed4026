#pragma once

#include <functional>

#include "esym/orbit.hpp"

namespace esym {

// Replayable certificate: input * eval(word) == output, bit-exact.
struct ReductionCertificate {
    Row input;
    GroupWord word;
    Row output;
};

struct MatrixCertificate {
    Matrix input;
    GroupWord word;
    Matrix output;
};

bool replay(const ReductionCertificate& c);
bool replay(const MatrixCertificate& c);

// Unimodular row to e1 by elementary column operations: Euclidean gcd chains
// over Z and F_p[x] (one variable, prime p), integer lifts for Z/m.
ReductionCertificate reduce_to_e1(const Row& v);
ReductionCertificate reduce_to_e1(const UnimodularRow& v); // validates first

// Same, staying inside the elementary symplectic generators (even length).
// Within each coordinate pair the single-entry generators give plain gcd
// steps; across pairs the two-term generators act purely once the even slots
// are cleared.
ReductionCertificate reduce_to_e1_symplectic(const Row& v);

struct ShortenResult {
    std::vector<RingElement> t; // per dropped position; zero outside S
    Row shortened;
    Row witness; // <shortened, witness> = 1
};

// Find t with t_i in the ideal, t_i = 0 for i outside S, such that
// (v_0 + v_m t_0, ..., v_{m-1} + v_m t_{m-1}) is unimodular. Deterministic
// search order; search_exhausted when the bound is hit.
ShortenResult shorten(const Row& v, const std::vector<std::size_t>& S, const Ideal& ideal,
                      long bound = 8);

struct PeelResult {
    GroupWord word; // epsilon with alpha * eval(epsilon) = I_2 ⊥ gamma
    Matrix gamma;
};

// One peel step: extend eps_prime (which sends the first row of alpha to e1)
// by se_2j(z) letters clearing row 2; the first row is untouched by those
// letters and the first column then equals e1^t automatically. In relative
// mode every added z is checked to lie in the ideal and gamma ≡ I mod I.
PeelResult symplectic_peel(const Matrix& alpha, const GroupWord& eps_prime,
                           const std::optional<Ideal>& relative_ideal = std::nullopt);

// produces eps_prime for a symplectic block: a word with
// first_row(alpha * eval(word)) = e1
using RowReducer = std::function<GroupWord(const Matrix& alpha)>;

// BFS-backed reducers for finite rings (path-recovering; caches one table per
// block size). The relative variant emits conjugated-generator certificates.
RowReducer make_bfs_reducer(const RingPtr& ring);
RowReducer make_relative_bfs_reducer(const RingPtr& ring, const Ideal& ideal);
// gcd-backed reducer for Euclidean rings, searching directly in the
// symplectic generators
RowReducer make_euclidean_reducer();

// Repeated peeling down to target_size: alpha * eval(word) = I_{2n-d} ⊥ gamma.
PeelResult peel_iterate(const Matrix& alpha, int target_size, const RowReducer& reducer,
                        const std::optional<Ideal>& relative_ideal = std::nullopt);

// index-shift embedding used by the peel stages (offset must be even for
// symplectic letters)
GroupWord embed_word(const GroupWord& w, int new_size, int offset);

} // namespace esym
