#pragma once

#include "esym/suslin.hpp"

namespace esym {

struct LiftedRow {
    Row host;          // the original row, congruent to e1 mod I
    Row lifted;        // over the excision ring, congruent to e1 mod 0+I
    std::string provenance; // "excision-z" or "excision"
};

// Entrywise lift of v = (1+i1, i2, ..., in) to ((1,i1),(0,i2),...,(0,in));
// target is an Excision or ExcisionZ ring whose ideal contains v - e1.
LiftedRow lift_row(const Row& v, const RingPtr& target);

// Entrywise lift of alpha (square over the host, alpha ≡ I mod J, det 1) into
// Z ⊕ J. The determinant of the lift is verified to be (1,0) rather than
// assumed; det_check_failed signals a library bug since the lift is unique and
// its determinant is forced.
Matrix lift_matrix(const Matrix& alpha, const RingPtr& target);

// The lift of a Suslin matrix is the Suslin matrix of the lifted rows:
// lift_matrix(S_r(v,w)) == suslin_matrix(lift_row(v), lift_row(w)).
bool suslin_lift_check(const Row& v, const Row& w, int r, const RingPtr& target);

} // namespace esym
