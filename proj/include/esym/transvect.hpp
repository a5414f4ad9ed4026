#pragma once

#include "esym/forms.hpp"

namespace esym {

// 1 + a v^t v-hat; symplectic for every a and v since <v, v-hat> = 0
Matrix rank1_transvection(const RingElement& a, const Row& v);

// 1 + v^t w-hat + w^t v-hat; symplectic whenever <v-hat, w> = 0
Matrix pair_transvection(const Row& v, const Row& w);

// Coefficient family of the kernel decomposition
// w = sum_{i != j} w_i u_j (v_j e_i - v_i e_j), given <u,v> = 1 and <w,v> = 0.
struct KernelDecomposition {
    // entries (i, j, coefficient w_i u_j), 0-indexed, i != j
    struct Term {
        std::size_t i, j;
        RingElement coeff;
    };
    std::vector<Term> terms;
};
KernelDecomposition kernel_decomposition(const Row& w, const Row& v, const Row& u);
// reconstruct sum of coeff * (v_j e_i - v_i e_j); equals w exactly
Row kernel_reconstruct(const KernelDecomposition& d, const Row& v, std::size_t len,
                       const RingPtr& ring);

struct PairTransvectionProduct {
    std::vector<Matrix> factors; // 1 + v_i^t w-hat + w^t v_i-hat, in order
    RingElement b;               // the residual coefficient, a member of I
};

// Splits 1 + sum_i (v_i^t w-hat + w^t v_i-hat) into the product of the factors
// times (1 + b w^t w-hat). The closed form b = -sum_{i<j} <v_i-hat, v_j> comes
// from expanding the product: T_i T_j = <v_i-hat, v_j> w^t w-hat and all
// triple products vanish. The identity is re-verified by exact multiplication
// before returning.
PairTransvectionProduct pair_transvection_product(const std::vector<Row>& vs, const Row& w,
                                                  const Ideal& ideal);

} // namespace esym
