#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esym/reduce.hpp"

using namespace esym;

namespace {

Row random_row(const RingPtr& R, std::size_t n, Rng& rng) {
    std::vector<RingElement> e;
    for (std::size_t k = 0; k < n; ++k) e.push_back(R->random_element(rng));
    return Row{R, std::move(e)};
}

bool only_sympl_letters(const GroupWord& w) {
    for (const auto& l : w.letters) {
        if (!std::holds_alternative<Generator>(l)) return false;
        if (std::get<Generator>(l).kind != Generator::Kind::SymplElem) return false;
    }
    return true;
}

} // namespace

TEST_CASE("reduce_to_e1 on the documented rows") {
    auto Z = Ring::integers();

    auto c1 = reduce_to_e1(unit_row(Z, 3, 0));
    CHECK(c1.word.letters.empty());
    CHECK(replay(c1));

    Row v{Z, {Z->from_int(2), Z->from_int(3)}};
    auto c2 = reduce_to_e1(v);
    CHECK(replay(c2));
    CHECK(c2.output == unit_row(Z, 2, 0));

    Row v3{Z, {Z->from_int(2), Z->from_int(3), Z->from_int(6)}};
    auto c3 = reduce_to_e1(v3);
    CHECK(replay(c3));
    CHECK(c3.output == unit_row(Z, 3, 0));
}

TEST_CASE("reduce_to_e1 rejects non-unimodular rows") {
    auto Z = Ring::integers();
    CHECK_THROWS_AS(reduce_to_e1(Row{Z, {Z->from_int(2), Z->from_int(4)}}), not_unimodular);
    CHECK_THROWS_AS(reduce_to_e1(Row{Z, {Z->zero(), Z->zero()}}), not_unimodular);
    auto Z8 = Ring::modular(8);
    CHECK_THROWS_AS(reduce_to_e1(Row{Z8, {Z8->from_int(2), Z8->from_int(4)}}),
                    not_unimodular);
}

TEST_CASE("reduce_to_e1 over Z, Z/m and F5[x], randomized with replay") {
    Rng rng(1234);
    auto Z = Ring::integers();
    auto Z8 = Ring::modular(8);
    auto F5x = Ring::poly(Ring::modular(5), {"x"});

    int done = 0;
    for (int t = 0; t < 500 && done < 40; ++t) {
        std::size_t n = 2 + rng.below(4);
        Row v = random_row(Z, n, rng);
        try {
            auto c = reduce_to_e1(v);
            CHECK(replay(c));
            CHECK(c.output == unit_row(Z, n, 0));
            ++done;
        } catch (const not_unimodular&) {
        }
    }
    CHECK(done == 40);

    done = 0;
    for (int t = 0; t < 500 && done < 40; ++t) {
        std::size_t n = 2 + rng.below(4);
        Row v = random_row(Z8, n, rng);
        try {
            auto c = reduce_to_e1(v);
            CHECK(replay(c));
            ++done;
        } catch (const not_unimodular&) {
        }
    }
    CHECK(done == 40);

    done = 0;
    for (int t = 0; t < 800 && done < 40; ++t) {
        std::size_t n = 2 + rng.below(4);
        Row v = random_row(F5x, n, rng);
        try {
            auto c = reduce_to_e1(v);
            CHECK(replay(c));
            CHECK(c.output == unit_row(F5x, n, 0));
            ++done;
        } catch (const not_unimodular&) {
        }
    }
    CHECK(done == 40);
}

TEST_CASE("symplectic reduction stays in symplectic letters") {
    Rng rng(555);
    auto Z = Ring::integers();
    auto Z8 = Ring::modular(8);
    auto F5x = Ring::poly(Ring::modular(5), {"x"});

    for (const auto& R : {Z, Z8, F5x}) {
        int done = 0;
        for (int t = 0; t < 800 && done < 25; ++t) {
            std::size_t n = (rng.coin() ? 4 : 6);
            Row v = random_row(R, n, rng);
            try {
                auto c = reduce_to_e1_symplectic(v);
                CHECK(replay(c));
                CHECK(c.output == unit_row(R, n, 0));
                CHECK(only_sympl_letters(c.word));
                CHECK(is_symplectic(word_eval(c.word), standard_form(R, int(n) / 2)));
                ++done;
            } catch (const not_unimodular&) {
            }
        }
        CHECK(done == 25);
    }
}

TEST_CASE("shorten finds ideal multiples with certified unimodularity") {
    auto Z = Ring::integers();
    Ideal unitZ{Z, {Z->one()}};

    Row a{Z, {Z->one(), Z->zero(), Z->zero()}};
    auto r1 = shorten(a, {0, 1}, unitZ);
    for (const auto& t : r1.t) CHECK(t.is_zero());
    CHECK(inner_product(r1.shortened, r1.witness) == Z->one());

    Row b{Z, {Z->from_int(2), Z->from_int(3), Z->from_int(5)}};
    auto r2 = shorten(b, {0, 1}, unitZ);
    CHECK(inner_product(r2.shortened, r2.witness) == Z->one());
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(r2.shortened[i] == b[i] + b[2] * r2.t[i]);

    auto Z8 = Ring::modular(8);
    Ideal two{Z8, {Z8->from_int(2)}};
    Row c{Z8, {Z8->from_int(3), Z8->from_int(2), Z8->from_int(2)}};
    auto r3 = shorten(c, {0, 1}, two);
    CHECK(inner_product(r3.shortened, r3.witness) == Z8->one());
    for (const auto& t : r3.t) CHECK(ideal_contains(two, t));

    // impossible case: every candidate stays even
    Ideal twoZ{Z, {Z->from_int(2)}};
    Row d{Z, {Z->zero(), Z->zero(), Z->from_int(2)}};
    CHECK_THROWS_AS(shorten(d, {0, 1}, twoZ, 3), search_exhausted);
}

TEST_CASE("peel: already-peeled input with empty word") {
    auto Z8 = Ring::modular(8);
    Rng rng(31);
    Matrix gamma0 = word_eval(random_word(Z8, 2, Flavor::Symplectic, 5, rng));
    Matrix alpha = Matrix::identity(Z8, 4);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) alpha = alpha.with_entry(2 + r, 2 + c, gamma0.at(r, c));

    auto res = symplectic_peel(alpha, GroupWord::empty(Z8, 4, Flavor::Symplectic));
    CHECK(res.word.letters.empty());
    CHECK(res.gamma == gamma0);
}

TEST_CASE("peel: conjugated blocks over Z/8 via the BFS reducer") {
    auto Z8 = Ring::modular(8);
    Rng rng(77);
    auto reducer = make_bfs_reducer(Z8);
    for (int t = 0; t < 10; ++t) {
        Matrix gamma0 = word_eval(random_word(Z8, 2, Flavor::Symplectic, 4, rng));
        Matrix block = Matrix::identity(Z8, 4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) block = block.with_entry(2 + r, 2 + c, gamma0.at(r, c));
        // conjugate by an evaluated word and its exact inverse
        GroupWord dw = random_word(Z8, 4, Flavor::Symplectic, 10, rng);
        Matrix alpha = word_eval(dw) * block * word_eval(word_inverse(dw));

        auto eps_prime = reducer(alpha);
        auto res = symplectic_peel(alpha, eps_prime);
        // exact factorization
        Matrix recomposed = alpha * word_eval(res.word);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 4; ++c)
                CHECK(recomposed.at(r, c) ==
                      (r == c ? Z8->one() : Z8->zero()));
        CHECK(is_symplectic(res.gamma, standard_form(Z8, 1)));
    }
}

TEST_CASE("peel: relative variant keeps parameters in the ideal") {
    auto Z8 = Ring::modular(8);
    Ideal I{Z8, {Z8->from_int(2)}};
    Rng rng(13);
    auto reducer = make_relative_bfs_reducer(Z8, I);
    for (int t = 0; t < 6; ++t) {
        GroupWord w = random_relative_word(Z8, 4, Flavor::Symplectic, I, 6, rng);
        Matrix alpha = word_eval(w);
        auto eps_prime = reducer(alpha);
        auto res = symplectic_peel(alpha, eps_prime, I);
        validate_relative(res.word);
        CHECK(congruent_mod(res.gamma, Matrix::identity(Z8, 2), I));
        Matrix recomposed = alpha * word_eval(res.word);
        for (int c = 0; c < 4; ++c) {
            CHECK(recomposed.at(0, c) == (c == 0 ? Z8->one() : Z8->zero()));
            CHECK(recomposed.at(1, c) == (c == 1 ? Z8->one() : Z8->zero()));
        }
    }
}

TEST_CASE("peel error paths") {
    auto Z8 = Ring::modular(8);
    Matrix notsym = Matrix::identity(Z8, 4).with_entry(0, 2, Z8->one());
    CHECK_THROWS_AS(symplectic_peel(notsym, GroupWord::empty(Z8, 4, Flavor::Symplectic)),
                    not_symplectic);

    Rng rng(1);
    // a symplectic matrix whose first row is not e1, with an empty eps'
    Matrix alpha = word_eval(random_word(Z8, 4, Flavor::Symplectic, 1, rng));
    while (unit_row(Z8, 4, 0) * alpha == unit_row(Z8, 4, 0))
        alpha = word_eval(random_word(Z8, 4, Flavor::Symplectic, 1, rng));
    CHECK_THROWS_AS(symplectic_peel(alpha, GroupWord::empty(Z8, 4, Flavor::Symplectic)),
                    first_row_not_e1);
}

TEST_CASE("embedded words evaluate as padded blocks") {
    auto Z8 = Ring::modular(8);
    Rng rng(4);
    GroupWord w = random_word(Z8, 4, Flavor::Symplectic, 6, rng);
    GroupWord e = embed_word(w, 6, 2);
    Matrix big = word_eval(e);
    Matrix small = word_eval(w);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            if (r < 2 || c < 2)
                CHECK(big.at(r, c) == (r == c ? Z8->one() : Z8->zero()));
            else
                CHECK(big.at(r, c) == small.at(r - 2, c - 2));
        }
}

TEST_CASE("iterated peel down to Sp_2 over Z/4") {
    auto Z4 = Ring::modular(4);
    Rng rng(21);
    auto reducer = make_bfs_reducer(Z4);
    for (int t = 0; t < 5; ++t) {
        Matrix alpha = word_eval(random_word(Z4, 6, Flavor::Symplectic, 12, rng));
        auto res = peel_iterate(alpha, 2, reducer);
        CHECK(res.gamma.nrows() == 2);
        CHECK(is_symplectic(res.gamma, standard_form(Z4, 1)));
        Matrix recomposed = alpha * word_eval(res.word);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 6; ++c)
                CHECK(recomposed.at(r, c) == (r == c ? Z4->one() : Z4->zero()));
    }

    // already at target: empty word
    auto res0 = peel_iterate(Matrix::identity(Z4, 4), 4, reducer);
    CHECK(res0.word.letters.empty());
    CHECK(res0.gamma == Matrix::identity(Z4, 4));
}

TEST_CASE("iterated peel recovers a planted block up to construction freedom") {
    auto Z8 = Ring::modular(8);
    Rng rng(8);
    auto reducer = make_bfs_reducer(Z8);
    Matrix gamma0 = word_eval(random_word(Z8, 2, Flavor::Symplectic, 5, rng));
    Matrix alpha = Matrix::identity(Z8, 6);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) alpha = alpha.with_entry(4 + r, 4 + c, gamma0.at(r, c));
    auto res = peel_iterate(alpha, 2, reducer);
    Matrix recomposed = alpha * word_eval(res.word);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 6; ++c)
            CHECK(recomposed.at(r, c) == (r == c ? Z8->one() : Z8->zero()));
    CHECK(is_symplectic(res.gamma, standard_form(Z8, 1)));
}
