#include "esym/transvect.hpp"

namespace esym {

Matrix rank1_transvection(const RingElement& a, const Row& v) {
    if (v.size() < 4 || v.size() % 2 != 0)
        throw dimension_mismatch("rank-1 transvections need even size >= 4");
    Matrix m = Matrix::identity(v.ring, int(v.size())) + scale(a, outer_product(v, hat(v)));
    if (!is_symplectic(m, standard_form(v.ring, int(v.size()) / 2)))
        throw internal_check_failed("rank-1 transvection failed the form check");
    return m;
}

Matrix pair_transvection(const Row& v, const Row& w) {
    if (v.size() != w.size() || v.size() % 2 != 0 || v.size() < 4)
        throw dimension_mismatch("pair transvections need matching even size >= 4");
    return Matrix::identity(v.ring, int(v.size())) + outer_product(v, hat(w)) +
           outer_product(w, hat(v));
}

KernelDecomposition kernel_decomposition(const Row& w, const Row& v, const Row& u) {
    if (w.size() != v.size() || u.size() != v.size())
        throw dimension_mismatch("kernel decomposition length mismatch");
    if (inner_product(u, v) != v.ring->one())
        throw witness_invalid("witness must satisfy <u, v> = 1");
    if (!inner_product(w, v).is_zero())
        throw not_in_kernel("row is not orthogonal to v");
    KernelDecomposition d;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (i == j) continue;
            RingElement c = w[i] * u[j];
            if (!c.is_zero()) d.terms.push_back({i, j, std::move(c)});
        }
    return d;
}

Row kernel_reconstruct(const KernelDecomposition& d, const Row& v, std::size_t len,
                       const RingPtr& ring) {
    Row acc{ring, std::vector<RingElement>(len, ring->zero())};
    for (const auto& t : d.terms) {
        acc[t.i] = acc[t.i] + t.coeff * v[t.j];
        acc[t.j] = acc[t.j] - t.coeff * v[t.i];
    }
    return acc;
}

PairTransvectionProduct pair_transvection_product(const std::vector<Row>& vs, const Row& w,
                                                  const Ideal& ideal) {
    if (vs.empty()) throw error("at least one row is needed");
    const RingPtr& R = w.ring;
    for (const auto& v : vs) {
        if (v.size() != w.size()) throw dimension_mismatch("row length mismatch");
        if (!inner_product(hat(v), w).is_zero())
            throw orthogonality_violated("<v-hat, w> must vanish for every v");
        for (const auto& entry : v.entries)
            if (!ideal_contains(ideal, entry))
                throw error("pair transvection rows must lie in I^(2n)");
    }

    PairTransvectionProduct out;
    out.b = R->zero();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out.factors.push_back(pair_transvection(vs[i], w));
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            out.b = out.b - inner_product(hat(vs[i]), vs[j]);
    }
    if (!ideal_contains(ideal, out.b))
        throw internal_check_failed("residual coefficient escaped the ideal");

    // exact re-verification of the displayed identity
    const int n = int(w.size());
    Matrix lhs = Matrix::identity(R, n);
    for (const auto& v : vs)
        lhs = lhs + outer_product(v, hat(w)) + outer_product(w, hat(v));
    Matrix rhs = Matrix::identity(R, n);
    for (const auto& f : out.factors) rhs = rhs * f;
    rhs = rhs * (Matrix::identity(R, n) + scale(out.b, outer_product(w, hat(w))));
    if (lhs != rhs)
        throw internal_check_failed("pair transvection product identity failed");
    return out;
}

} // namespace esym
