#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>

#include "esym/orbit.hpp"

using namespace esym;

namespace {

std::vector<Matrix> gen_matrices(const RingPtr& R, int size, Flavor flavor) {
    FiniteRing fr(R);
    std::vector<Matrix> out;
    auto gens = canonical_generators(fr, size, flavor, std::nullopt);
    for (const auto& g : gens) {
        std::vector<RingElement> e;
        for (auto idx : g.mat) e.push_back(fr.element(idx));
        out.emplace_back(R, size, size, std::move(e));
    }
    return out;
}

// independent oracle: rows over Z/m with at least one unit entry (local rings)
std::vector<std::uint64_t> unit_rows_enumerated(const OrbitSpace& space, unsigned long m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < space.num_states(); ++s) {
        auto idx = space.decode_indices(s);
        bool has_unit = false;
        for (auto e : idx) {
            mpz_class g;
            mpz_class val(static_cast<unsigned long>(e));
            mpz_class mod(m);
            mpz_gcd(g.get_mpz_t(), val.get_mpz_t(), mod.get_mpz_t());
            if (g == 1) has_unit = true;
        }
        if (has_unit) out.push_back(s);
    }
    return out;
}

// independent oracle for the relative orbit: the finest action-closed
// partition of the absolute orbit merging y with y*g for ideal generators g
std::vector<std::uint64_t> normal_closure_orbit_oracle(const OrbitSpace& space, const Row& v,
                                                       const Ideal& ideal, Flavor flavor) {
    FiniteRing const& fr = space.table();
    auto abs = canonical_generators(fr, space.len(), flavor, std::nullopt);
    auto idl = canonical_generators(fr, space.len(), flavor, ideal);
    auto orbit = space.closure({space.encode(v)}, abs);

    std::map<std::uint64_t, std::uint64_t> parent;
    for (auto s : orbit) parent[s] = s;
    std::function<std::uint64_t(std::uint64_t)> find = [&](std::uint64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::deque<std::pair<std::uint64_t, std::uint64_t>> work;
    for (auto s : orbit) {
        auto vi = space.decode_indices(s);
        for (const auto& g : idl) work.push_back({s, space.encode_indices(space.apply(vi, g.mat))});
    }
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        auto rx = find(x), ry = find(y);
        if (rx == ry) continue;
        parent[rx] = ry;
        // action-closedness: merged classes stay merged under every generator
        auto xi = space.decode_indices(rx);
        auto yi = space.decode_indices(ry);
        for (const auto& a : abs)
            work.push_back({space.encode_indices(space.apply(xi, a.mat)),
                            space.encode_indices(space.apply(yi, a.mat))});
    }
    std::vector<std::uint64_t> cls;
    auto root = find(space.encode(v));
    for (auto s : orbit)
        if (find(s) == root) cls.push_back(s);
    std::sort(cls.begin(), cls.end());
    return cls;
}

} // namespace

TEST_CASE("orbits over Z/2: all 15 nonzero rows, both flavors") {
    auto R = Ring::modular(2);
    OrbitSpace space(R, 4);
    Row e1 = unit_row(R, 4, 0);

    auto linear = orbit_bfs(e1, gen_matrices(R, 4, Flavor::Linear));
    auto sympl = orbit_bfs(e1, gen_matrices(R, 4, Flavor::Symplectic));
    CHECK(linear.size() == 15);
    CHECK(sympl.size() == 15);

    std::vector<std::uint64_t> le, se;
    for (const auto& r : linear) le.push_back(space.encode(r));
    for (const auto& r : sympl) se.push_back(space.encode(r));
    CHECK(le == se);
    CHECK(le == unit_rows_enumerated(space, 2));
}

TEST_CASE("orbits over Z/4: the 240 unit-containing rows") {
    auto R = Ring::modular(4);
    OrbitSpace space(R, 4);
    Row e1 = unit_row(R, 4, 0);

    auto linear = orbit_bfs(e1, gen_matrices(R, 4, Flavor::Linear));
    CHECK(linear.size() == 240);
    std::vector<std::uint64_t> le;
    for (const auto& r : linear) le.push_back(space.encode(r));
    CHECK(le == unit_rows_enumerated(space, 4));

    auto sympl = orbit_bfs(e1, gen_matrices(R, 4, Flavor::Symplectic));
    std::vector<std::uint64_t> se;
    for (const auto& r : sympl) se.push_back(space.encode(r));
    CHECK(le == se);
}

TEST_CASE("orbit output does not depend on generator order") {
    auto R = Ring::modular(4);
    Row e1 = unit_row(R, 4, 0);
    auto gens = gen_matrices(R, 4, Flavor::Symplectic);
    auto a = orbit_bfs(e1, gens);
    std::reverse(gens.begin(), gens.end());
    auto b = orbit_bfs(e1, gens);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("orbit_bfs closes generator sets under inverses") {
    auto R = Ring::modular(5);
    Row e1 = unit_row(R, 3, 0);
    // one-sided generator list: only E_ij(1); inverses must be added internally
    std::vector<Matrix> gens;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) gens.push_back(elem_gen(i, j, R->one(), 3));
    auto orbit = orbit_bfs(e1, gens);
    CHECK(orbit.size() == 124); // 5^3 - 1 nonzero rows over the field F_5
}

TEST_CASE("state space cap raises") {
    CHECK_THROWS_AS(OrbitSpace(Ring::modular(8), 4, 100), cap_exceeded);
}

TEST_CASE("path table recovers replayable words") {
    auto R = Ring::modular(8);
    OrbitSpace space(R, 4);
    auto gens = canonical_generators(space.table(), 4, Flavor::Symplectic, std::nullopt);
    Row e1 = unit_row(R, 4, 0);
    PathTable paths(space, space.encode(e1), gens, Flavor::Symplectic, R);

    auto reached = paths.reached_sorted();
    CHECK(reached.size() == 3840); // 8^4 - 4^4 unit-containing rows

    Rng rng(2024);
    for (int t = 0; t < 25; ++t) {
        std::uint64_t target = reached[rng.below(reached.size())];
        GroupWord w = paths.word_to(target);
        CHECK(e1 * word_eval(w) == space.decode(target));
    }
}

TEST_CASE("relative orbit certification: Z/4 with I=(2)") {
    auto R = Ring::modular(4);
    OrbitSpace space(R, 4);
    Row e1 = unit_row(R, 4, 0);
    Ideal I{R, {R->from_int(2)}};

    auto lin = relative_orbit_certify(space, e1, I, Flavor::Linear);
    CHECK(lin.certified);
    CHECK(lin.lower == lin.upper);
    // upper: first entry odd, others even: 2 * 2^3 = 16 rows
    CHECK(lin.upper.size() == 16);

    auto sym = relative_orbit_certify(space, e1, I, Flavor::Symplectic);
    CHECK(sym.certified);
    CHECK(sym.lower == lin.lower); // the two relative orbits coincide

    // independent oracle: finest action-closed partition of the orbit
    CHECK(lin.lower == normal_closure_orbit_oracle(space, e1, I, Flavor::Linear));
    CHECK(sym.lower == normal_closure_orbit_oracle(space, e1, I, Flavor::Symplectic));
}

TEST_CASE("relative certification degenerate ideals") {
    auto R = Ring::modular(4);
    OrbitSpace space(R, 4);
    Row e1 = unit_row(R, 4, 0);

    // unit ideal: reduces to the absolute orbit
    Ideal unit{R, {R->one()}};
    auto rep = relative_orbit_certify(space, e1, unit, Flavor::Linear);
    CHECK(rep.certified);
    CHECK(rep.lower.size() == 240);

    // zero ideal: the trivial relative group
    Ideal zero{R, {R->zero()}};
    auto rep0 = relative_orbit_certify(space, e1, zero, Flavor::Symplectic);
    CHECK(rep0.certified);
    CHECK(rep0.lower == std::vector<std::uint64_t>{space.encode(e1)});
}

TEST_CASE("relative path table yields valid relative words") {
    auto R = Ring::modular(8);
    OrbitSpace space(R, 4);
    Row e1 = unit_row(R, 4, 0);
    Ideal I{R, {R->from_int(2)}};
    RelativePathTable rel(space, space.encode(e1), I, Flavor::Symplectic);

    Rng rng(7);
    int tested = 0;
    for (int t = 0; t < 200 && tested < 20; ++t) {
        // random row congruent to e1 mod 2: odd first entry, even rest
        std::vector<RingElement> e{R->from_int(1 + 2 * long(rng.below(4)))};
        for (int k = 0; k < 3; ++k) e.push_back(R->from_int(2 * long(rng.below(4))));
        Row target = row_of(R, e);
        std::uint64_t enc = space.encode(target);
        REQUIRE(rel.reached(enc));
        GroupWord w = rel.word_to(enc);
        validate_relative(w);
        CHECK(e1 * word_eval(w) == target);
        CHECK(congruent_mod(word_eval(w), Matrix::identity(R, 4), I));
        ++tested;
    }
    CHECK(tested == 20);
}
