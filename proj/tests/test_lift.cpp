#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esym/lift.hpp"
#include "esym/words.hpp"

using namespace esym;

namespace {

RingPtr ztarget(const RingPtr& host, long g) {
    return Ring::excision_z(host, Ideal{host, {host->from_int(g)}});
}

} // namespace

TEST_CASE("lift_row splits entries componentwise") {
    auto Z = Ring::integers();
    auto T = ztarget(Z, 2);

    auto lifted = lift_row(unit_row(Z, 3, 0), T);
    CHECK(lifted.lifted[0] == T->one());
    CHECK(lifted.lifted[1] == T->zero());

    Row v{Z, {Z->from_int(3), Z->from_int(2), Z->from_int(0), Z->from_int(2)}};
    auto lv = lift_row(v, T);
    auto ZZ = Ring::integers();
    CHECK(lv.lifted[0] == T->make_pair(ZZ->one(), Z->from_int(2)));
    CHECK(lv.lifted[1] == T->make_pair(ZZ->zero(), Z->from_int(2)));
    CHECK(lv.lifted[2] == T->zero());
    CHECK(lv.lifted[3] == T->make_pair(ZZ->zero(), Z->from_int(2)));

    // f recovers the input
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(hom_f(lv.lifted[k]) == v[k]);

    // congruent to e1 mod 0+I
    Ideal zeroI{T, {T->make_pair(ZZ->zero(), Z->from_int(2))}};
    CHECK(row_congruent_mod(lv.lifted, unit_row(T, 4, 0), zeroI));

    Row bad{Z, {Z->from_int(2), Z->from_int(2)}};
    CHECK_THROWS_AS(lift_row(bad, T), error);
}

TEST_CASE("g sends lifted rows back over R (+) I") {
    auto Z8 = Ring::modular(8);
    auto C = Ring::excision(Z8, Ideal{Z8, {Z8->from_int(2)}});
    Rng rng(9);
    for (int t = 0; t < 40; ++t) {
        std::vector<RingElement> e{Z8->from_int(1 + 2 * long(rng.below(4)))};
        for (int k = 0; k < 3; ++k) e.push_back(Z8->from_int(2 * long(rng.below(4))));
        Row v = row_of(Z8, e);
        auto lv = lift_row(v, C);
        for (std::size_t k = 0; k < v.size(); ++k) CHECK(hom_g(lv.lifted[k]) == v[k]);
    }
}

TEST_CASE("lift_matrix on the small documented cases") {
    auto Z = Ring::integers();
    auto T = ztarget(Z, 2);

    CHECK(lift_matrix(Matrix::identity(Z, 3), T) == Matrix::identity(T, 3));

    Matrix E = elem_gen(1, 2, Z->from_int(2), 2);
    Matrix S = lift_matrix(E, T);
    CHECK(S.at(0, 1) == T->make_pair(Ring::integers()->zero(), Z->from_int(2)));
    CHECK(det(S) == T->one());

    // congruence precondition violated
    CHECK_THROWS_AS(lift_matrix(elem_gen(1, 2, Z->one(), 2), T), error);
    // determinant 1 required over the host
    Matrix nonsl = Matrix::identity(Z, 2).with_entry(0, 0, Z->from_int(3));
    CHECK_THROWS_AS(lift_matrix(nonsl, T), error);
}

TEST_CASE("random relative SL words lift with verified determinant") {
    Rng rng(41);

    auto Z9 = Ring::modular(9);
    Ideal J9{Z9, {Z9->from_int(3)}};
    auto T9 = Ring::excision_z(Z9, J9);
    Ideal zeroJ9{T9, {T9->make_pair(Ring::integers()->zero(), Z9->from_int(3))}};
    for (int t = 0; t < 25; ++t) {
        GroupWord w = random_relative_word(Z9, 3, Flavor::Linear, J9, 5, rng);
        Matrix alpha = word_eval(w);
        Matrix S = lift_matrix(alpha, T9);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(hom_f(S.at(r, c)) == alpha.at(r, c));
        CHECK(congruent_mod(S, Matrix::identity(T9, 3), zeroJ9));
        CHECK(det(S) == T9->one());
    }

    auto Z = Ring::integers();
    Ideal J2{Z, {Z->from_int(2)}};
    auto T2 = Ring::excision_z(Z, J2);
    for (int t = 0; t < 25; ++t) {
        GroupWord w = random_relative_word(Z, 3, Flavor::Linear, J2, 3, rng);
        Matrix alpha = word_eval(w);
        Matrix S = lift_matrix(alpha, T2);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(hom_f(S.at(r, c)) == alpha.at(r, c));
        CHECK(det(S) == T2->one());
    }
}

TEST_CASE("lifts are unique and multiplicative") {
    auto Z9 = Ring::modular(9);
    Ideal J{Z9, {Z9->from_int(3)}};
    auto T = Ring::excision_z(Z9, J);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        GroupWord wa = random_relative_word(Z9, 3, Flavor::Linear, J, 4, rng);
        GroupWord wb = random_relative_word(Z9, 3, Flavor::Linear, J, 4, rng);
        Matrix a = word_eval(wa), b = word_eval(wb);
        CHECK(lift_matrix(a * b, T) == lift_matrix(a, T) * lift_matrix(b, T));

        // uniqueness is componentwise: the integer part is forced by the
        // congruence and then the ideal part is forced by the f-image
        Matrix S = lift_matrix(a, T);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                const auto& pair = S.at(r, c).as_pair();
                CHECK(*pair.first ==
                      (r == c ? Ring::integers()->one() : Ring::integers()->zero()));
                CHECK(*pair.second == (r == c ? a.at(r, c) - Z9->one() : a.at(r, c)));
            }
    }
}

TEST_CASE("suslin matrices lift to suslin matrices") {
    auto Z = Ring::integers();
    auto T = ztarget(Z, 2);

    // trivial case: v = w = e1
    CHECK(suslin_lift_check(unit_row(Z, 2, 0), unit_row(Z, 2, 0), 1, T));

    // the documented r=1 witness: v=(3,2), w=(3,-4), <v,w> = 9-8 = 1
    Row v{Z, {Z->from_int(3), Z->from_int(2)}};
    Row w{Z, {Z->from_int(3), Z->from_int(-4)}};
    CHECK(inner_product(v, w) == Z->one());
    CHECK(suslin_lift_check(v, w, 1, T));

    // r=2 witnesses congruent to e1 mod 2 with inner product 1
    Rng rng(8);
    int done = 0;
    for (int t = 0; t < 400 && done < 10; ++t) {
        auto [a, b] = random_unimodular_pair(3, rng);
        bool ok = true;
        Ideal two{Z, {Z->from_int(2)}};
        ok = ok && ideal_contains(two, a[0] - Z->one()) && ideal_contains(two, b[0] - Z->one());
        for (int k = 1; k < 3; ++k)
            ok = ok && ideal_contains(two, a[k]) && ideal_contains(two, b[k]);
        if (!ok) continue;
        CHECK(suslin_lift_check(a, b, 2, T));
        ++done;
    }
    CHECK(done == 10);
}
