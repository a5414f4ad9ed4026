#include "esym/lift.hpp"

namespace esym {

namespace {

void check_target(const RingPtr& target, const RingPtr& host) {
    if (target->kind() != RingKind::Excision && target->kind() != RingKind::ExcisionZ)
        throw ring_mismatch("lift target must be an excision ring");
    if (!target->base()->equals(*host))
        throw ring_mismatch("lift target is not built over the row's ring");
}

RingElement first_component_one(const RingPtr& target) {
    return target->kind() == RingKind::Excision ? target->base()->one()
                                                : Ring::integers()->one();
}

RingElement first_component_zero(const RingPtr& target) {
    return target->kind() == RingKind::Excision ? target->base()->zero()
                                                : Ring::integers()->zero();
}

} // namespace

LiftedRow lift_row(const Row& v, const RingPtr& target) {
    check_target(target, v.ring);
    const Ideal& I = target->ideal();
    if (!ideal_contains(I, v[0] - v.ring->one()))
        throw error("row is not congruent to e1: first entry - 1 lies outside the ideal");
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!ideal_contains(I, v[k]))
            throw error("row is not congruent to e1: a later entry lies outside the ideal");

    std::vector<RingElement> e;
    e.reserve(v.size());
    e.push_back(target->make_pair(first_component_one(target), v[0] - v.ring->one()));
    for (std::size_t k = 1; k < v.size(); ++k)
        e.push_back(target->make_pair(first_component_zero(target), v[k]));
    LiftedRow out{v, Row{target, std::move(e)},
                  target->kind() == RingKind::Excision ? "excision" : "excision-z"};

    // the projection recovers the host row, and the lift is e1 mod 0+I
    for (std::size_t k = 0; k < v.size(); ++k) {
        RingElement back = target->kind() == RingKind::Excision ? hom_g(out.lifted[k])
                                                                : hom_f(out.lifted[k]);
        if (back != v[k]) throw internal_check_failed("lift projection mismatch");
    }
    return out;
}

Matrix lift_matrix(const Matrix& alpha, const RingPtr& target) {
    check_target(target, alpha.ring());
    if (!alpha.is_square()) throw dimension_mismatch("only square matrices lift");
    const Ideal& J = target->ideal();
    const RingPtr& host = alpha.ring();

    for (int r = 0; r < alpha.nrows(); ++r)
        for (int c = 0; c < alpha.ncols(); ++c) {
            const RingElement& x = (r == c) ? alpha.at(r, c) - host->one() : alpha.at(r, c);
            if (!ideal_contains(J, x))
                throw error("matrix is not congruent to the identity mod the ideal");
        }
    if (det(alpha) != host->one()) throw error("lift requires determinant 1 over the host");

    std::vector<RingElement> e;
    e.reserve(std::size_t(alpha.nrows()) * alpha.ncols());
    for (int r = 0; r < alpha.nrows(); ++r)
        for (int c = 0; c < alpha.ncols(); ++c) {
            if (r == c)
                e.push_back(target->make_pair(first_component_one(target),
                                              alpha.at(r, c) - host->one()));
            else
                e.push_back(target->make_pair(first_component_zero(target), alpha.at(r, c)));
        }
    Matrix S(target, alpha.nrows(), alpha.ncols(), std::move(e));

    // the lemma guarantees det S = (1,0); verify with the division-free path
    if (det(S) != target->one())
        throw det_check_failed("lifted matrix determinant is not (1,0)");
    return S;
}

bool suslin_lift_check(const Row& v, const Row& w, int r, const RingPtr& target) {
    Matrix host_S = suslin_matrix(v, w, r);
    Matrix lifted = lift_matrix(host_S, target);
    Matrix built = suslin_matrix(lift_row(v, target).lifted, lift_row(w, target).lifted, r);
    return lifted == built;
}

} // namespace esym
