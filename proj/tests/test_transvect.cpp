#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esym/suslin.hpp"
#include "esym/transvect.hpp"
#include "esym/words.hpp"

using namespace esym;

namespace {

// rows orthogonal to w-hat span: w itself and the 2x2 minors pattern
// (what_q e_p - what_p e_q); combinations with coefficients from I give rows
// in I^{2n} with <v-hat, w> = 0 exactly
Row orthogonal_combination(const Row& w, const std::vector<RingElement>& coeffs) {
    const auto& R = w.ring;
    Row wh = hat(w);
    Row acc{R, std::vector<RingElement>(w.size(), R->zero())};
    std::size_t idx = 0;
    acc = acc + scale(coeffs.at(idx++), w);
    for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t q = p + 1; q < w.size(); ++q) {
            const RingElement& c = coeffs.at(idx++);
            acc[p] = acc[p] + c * wh[q];
            acc[q] = acc[q] - c * wh[p];
        }
    return acc;
}

std::size_t coeff_count(std::size_t n) { return 1 + n * (n - 1) / 2; }

Row random_kernel_row(const Row& v, Rng& rng) {
    const auto& R = v.ring;
    Row acc{R, std::vector<RingElement>(v.size(), R->zero())};
    for (int t = 0; t < 6; ++t) {
        std::size_t i = rng.below(v.size()), j = rng.below(v.size());
        if (i == j) continue;
        RingElement c = R->random_element(rng);
        acc[i] = acc[i] + c * v[j];
        acc[j] = acc[j] - c * v[i];
    }
    return acc;
}

// unimodular pair over Z/m: retry until the inner product is a unit, rescale
std::pair<Row, Row> modular_unimodular_pair(const RingPtr& R, std::size_t n, Rng& rng) {
    for (int t = 0; t < 10000; ++t) {
        std::vector<RingElement> ve, ue;
        for (std::size_t k = 0; k < n; ++k) ve.push_back(R->random_element(rng));
        for (std::size_t k = 0; k < n; ++k) ue.push_back(R->random_element(rng));
        Row v{R, ve}, u{R, ue};
        mpz_class ip = inner_product(u, v).as_int();
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), ip.get_mpz_t(), R->modulus().get_mpz_t()) != 0)
            return {v, scale(R->from_mpz(inv), u)};
    }
    throw search_exhausted("no unimodular pair found");
}

} // namespace

TEST_CASE("rank-1 transvections specialize to elementary symplectic generators") {
    auto P = Ring::poly(Ring::integers(), {"z"});
    auto z = P->variable(0);
    CHECK(rank1_transvection(z, unit_row(P, 4, 0)) == sympl_gen(1, 2, z, 4));
}

TEST_CASE("rank-1 transvections are symplectic, symbolically, sizes 4 and 6") {
    for (std::size_t n : {4u, 6u}) {
        std::vector<std::string> vars{"a"};
        for (std::size_t k = 1; k <= n; ++k) vars.push_back("v" + std::to_string(k));
        auto P = Ring::poly(Ring::integers(), vars);
        std::vector<RingElement> ve;
        for (std::size_t k = 1; k <= n; ++k) ve.push_back(P->variable(k));
        Row v{P, std::move(ve)};
        Matrix m = rank1_transvection(P->variable(0), v);
        CHECK(is_symplectic(m, standard_form(P, int(n) / 2)));
    }
}

TEST_CASE("rank-1 parameters in I give matrices congruent to I mod I") {
    auto Z8 = Ring::modular(8);
    Ideal I{Z8, {Z8->from_int(2)}};
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        RingElement a = Z8->from_int(2 * long(rng.below(4)));
        std::vector<RingElement> ve;
        for (int k = 0; k < 4; ++k) ve.push_back(Z8->random_element(rng));
        Matrix m = rank1_transvection(a, Row{Z8, std::move(ve)});
        CHECK(congruent_mod(m, Matrix::identity(Z8, 4), I));
    }
}

TEST_CASE("rank-1 transvections are additive in the parameter") {
    std::vector<std::string> vars{"a", "b", "v1", "v2", "v3", "v4"};
    auto P = Ring::poly(Ring::integers(), vars);
    Row v{P, {P->variable(2), P->variable(3), P->variable(4), P->variable(5)}};
    auto a = P->variable(0), b = P->variable(1);
    CHECK(rank1_transvection(a, v) * rank1_transvection(b, v) ==
          rank1_transvection(a + b, v));
}

TEST_CASE("kernel decomposition reconstructs exactly: documented example") {
    auto Z = Ring::integers();
    Row v{Z, {Z->from_int(2), Z->from_int(3)}};
    Row u{Z, {Z->from_int(-1), Z->from_int(1)}};
    Row w{Z, {Z->from_int(3), Z->from_int(-2)}};
    auto d = kernel_decomposition(w, v, u);
    CHECK(kernel_reconstruct(d, v, 2, Z) == w);

    // zero row decomposes to the empty family
    Row zero{Z, {Z->zero(), Z->zero()}};
    CHECK(kernel_decomposition(zero, v, u).terms.empty());

    CHECK_THROWS_AS(kernel_decomposition(v, v, u), not_in_kernel);
    CHECK_THROWS_AS(kernel_decomposition(w, v, w), witness_invalid);
}

TEST_CASE("kernel decomposition on 500 random triples per ring") {
    Rng rng(2718);

    auto Z7 = Ring::modular(7);
    for (int t = 0; t < 500; ++t) {
        auto [v, u] = modular_unimodular_pair(Z7, 4, rng);
        Row w = random_kernel_row(v, rng);
        auto d = kernel_decomposition(w, v, u);
        CHECK(kernel_reconstruct(d, v, 4, Z7) == w);
    }

    auto Z = Ring::integers();
    for (int t = 0; t < 500; ++t) {
        auto [v, u] = random_unimodular_pair(4, rng);
        Row w = random_kernel_row(v, rng);
        auto d = kernel_decomposition(w, v, u);
        CHECK(kernel_reconstruct(d, v, 4, Z) == w);
    }

    auto Z8 = Ring::modular(8);
    for (int t = 0; t < 500; ++t) {
        auto [v, u] = modular_unimodular_pair(Z8, 4, rng);
        Row w = random_kernel_row(v, rng);
        auto d = kernel_decomposition(w, v, u);
        CHECK(kernel_reconstruct(d, v, 4, Z8) == w);
    }
}

TEST_CASE("derivation oracle for the residual coefficient, symbolic k=2") {
    // w symbolic, v_i constructed in the span orthogonal to w-hat with fresh
    // coefficient variables; the coefficient variables generate the ideal
    const std::size_t n = 4;
    std::vector<std::string> vars;
    for (std::size_t k = 1; k <= n; ++k) vars.push_back("w" + std::to_string(k));
    for (int i = 1; i <= 2; ++i)
        for (std::size_t c = 0; c < coeff_count(n); ++c)
            vars.push_back("c" + std::to_string(i) + "_" + std::to_string(c));
    auto P = Ring::poly(Ring::integers(), vars);

    std::vector<RingElement> we;
    for (std::size_t k = 0; k < n; ++k) we.push_back(P->variable(k));
    Row w{P, std::move(we)};
    std::vector<Row> vs;
    std::vector<RingElement> ideal_gens;
    for (int i = 0; i < 2; ++i) {
        std::vector<RingElement> coeffs;
        for (std::size_t c = 0; c < coeff_count(n); ++c) {
            coeffs.push_back(P->variable(n + i * coeff_count(n) + c));
            ideal_gens.push_back(coeffs.back());
        }
        vs.push_back(orthogonal_combination(w, coeffs));
    }
    for (const auto& v : vs) CHECK(inner_product(hat(v), w).is_zero());

    // expansion oracle: (1+T1)(1+T2) - (1 + T1 + T2) must be a w^t w-hat
    // multiple, and the multiplier is <v1-hat, v2>
    Matrix T1 = outer_product(vs[0], hat(w)) + outer_product(w, hat(vs[0]));
    Matrix T2 = outer_product(vs[1], hat(w)) + outer_product(w, hat(vs[1]));
    Matrix I4 = Matrix::identity(P, int(n));
    Matrix D = (I4 + T1) * (I4 + T2) - (I4 + T1 + T2);
    RingElement c12 = inner_product(hat(vs[0]), vs[1]);
    CHECK(D == scale(c12, outer_product(w, hat(w))));

    // the library's hard-coded closed form must match the oracle
    Ideal I{P, ideal_gens};
    auto prod = pair_transvection_product(vs, w, I);
    CHECK(prod.b == -c12);
    CHECK(ideal_contains(I, prod.b));

    // and the displayed identity holds symbolically
    Matrix rhs = prod.factors[0] * prod.factors[1] *
                 (I4 + scale(prod.b, outer_product(w, hat(w))));
    CHECK(rhs == I4 + T1 + T2);

    // pair factors are symplectic under the imposed orthogonality
    for (const auto& f : prod.factors) CHECK(is_symplectic(f, standard_form(P, int(n) / 2)));
}

TEST_CASE("single-factor product needs no correction") {
    auto Z8 = Ring::modular(8);
    Ideal I{Z8, {Z8->from_int(2)}};
    Rng rng(5);
    Row w{Z8, {Z8->from_int(1), Z8->from_int(2), Z8->from_int(3), Z8->from_int(4)}};
    std::vector<RingElement> coeffs;
    for (std::size_t c = 0; c < coeff_count(4); ++c)
        coeffs.push_back(Z8->from_int(2 * long(rng.below(4))));
    auto prod = pair_transvection_product({orthogonal_combination(w, coeffs)}, w, I);
    CHECK(prod.b == Z8->zero());
}

TEST_CASE("numeric product splitting at k=2 and k=3 over Z/8") {
    auto Z8 = Ring::modular(8);
    Ideal I{Z8, {Z8->from_int(2)}};
    Rng rng(99);
    for (int k : {2, 3}) {
        for (int t = 0; t < 25; ++t) {
            std::vector<RingElement> we;
            for (int j = 0; j < 4; ++j) we.push_back(Z8->random_element(rng));
            Row w{Z8, std::move(we)};
            std::vector<Row> vs;
            for (int i = 0; i < k; ++i) {
                std::vector<RingElement> coeffs;
                for (std::size_t c = 0; c < coeff_count(4); ++c)
                    coeffs.push_back(Z8->from_int(2 * long(rng.below(4))));
                vs.push_back(orthogonal_combination(w, coeffs));
            }
            auto prod = pair_transvection_product(vs, w, I);
            CHECK(ideal_contains(I, prod.b));
            // factors built from rows in I^(2n) are congruent to I mod I
            for (const auto& f : prod.factors)
                CHECK(congruent_mod(f, Matrix::identity(Z8, 4), I));
            // independent replay of the displayed identity
            Matrix lhs = Matrix::identity(Z8, 4);
            for (const auto& v : vs)
                lhs = lhs + outer_product(v, hat(w)) + outer_product(w, hat(v));
            Matrix rhs = Matrix::identity(Z8, 4);
            for (const auto& f : prod.factors) rhs = rhs * f;
            rhs = rhs * (Matrix::identity(Z8, 4) +
                         scale(prod.b, outer_product(w, hat(w))));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("orthogonality precondition is enforced") {
    auto Z8 = Ring::modular(8);
    Ideal I{Z8, {Z8->from_int(2)}};
    Row w{Z8, {Z8->one(), Z8->zero(), Z8->zero(), Z8->zero()}};
    Row bad{Z8, {Z8->zero(), Z8->from_int(2), Z8->zero(), Z8->zero()}};
    // <bad-hat, w> = -2 != 0
    CHECK_THROWS_AS(pair_transvection_product({bad}, w, I), orthogonality_violated);
}
