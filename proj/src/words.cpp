#include "esym/words.hpp"

namespace esym {

int sigma_pair(int i, int size) {
    if (i < 1 || i > size) throw dimension_mismatch("index out of range");
    return (i % 2 == 0) ? i - 1 : i + 1;
}

Matrix elem_gen(int i, int j, const RingElement& lambda, int n) {
    if (i < 1 || j < 1 || i > n || j > n) throw dimension_mismatch("index out of range");
    if (i == j) throw dimension_mismatch("elementary generator needs i != j");
    return Matrix::identity(lambda.ring(), n).with_entry(i - 1, j - 1, lambda);
}

Matrix sympl_gen(int i, int j, const RingElement& z, int n) {
    if (n % 2 != 0) throw dimension_mismatch("symplectic size must be even");
    if (i < 1 || j < 1 || i > n || j > n) throw dimension_mismatch("index out of range");
    if (i == j) throw dimension_mismatch("symplectic generator needs i != j");
    const RingPtr& R = z.ring();
    Matrix m = Matrix::identity(R, n);
    if (i == sigma_pair(j, n)) {
        m = m.with_entry(i - 1, j - 1, z);
    } else {
        int sgn = ((i + j) % 2 == 0) ? 1 : -1;
        RingElement second = (sgn > 0) ? -z : z;
        m = m.with_entry(i - 1, j - 1, z)
                .with_entry(sigma_pair(j, n) - 1, sigma_pair(i, n) - 1, second);
    }
    // guard against sign mistakes: every emitted generator must preserve psi
    if (!is_symplectic(m, standard_form(R, n / 2)))
        throw internal_check_failed("sympl_gen produced a non-symplectic matrix");
    return m;
}

Matrix diag_sign(int j, const RingPtr& ring, int n) {
    if (j < 1 || j > n) throw dimension_mismatch("index out of range");
    return Matrix::identity(ring, n).with_entry(j - 1, j - 1, -ring->one());
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

GroupWord GroupWord::empty(RingPtr ring, int size, Flavor flavor) {
    GroupWord w;
    w.ring = std::move(ring);
    w.size = size;
    w.flavor = flavor;
    return w;
}

namespace {

void check_letter(const GroupWord& w, const Generator& g) {
    if (g.size != w.size) throw dimension_mismatch("letter size differs from word size");
    if (g.kind == Generator::Kind::SymplElem && w.flavor != Flavor::Symplectic)
        throw error("symplectic letter in a linear word");
    if (g.kind == Generator::Kind::Elem && w.flavor != Flavor::Linear)
        throw error("linear letter in a symplectic word");
    if (g.kind == Generator::Kind::DiagSign && w.flavor != Flavor::Linear)
        throw error("diagonal sign letters appear only in linear words");
    if (g.kind != Generator::Kind::DiagSign && !g.param.ring()->equals(*w.ring))
        throw ring_mismatch("letter parameter in a foreign ring");
}

} // namespace

GroupWord& GroupWord::append(Generator g) {
    check_letter(*this, g);
    letters.emplace_back(std::move(g));
    return *this;
}

GroupWord& GroupWord::append(ConjFrame f) {
    if (!f.outer || !f.inner) throw error("conjugation frame with missing words");
    if (f.outer->size != size || f.inner->size != size)
        throw dimension_mismatch("conjugation frame size mismatch");
    if (f.outer->flavor != flavor || f.inner->flavor != flavor)
        throw error("conjugation frame flavor mismatch");
    letters.emplace_back(std::move(f));
    return *this;
}

Generator elem_letter(int i, int j, RingElement lambda, int n) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw dimension_mismatch("bad elementary letter indices");
    return Generator{Generator::Kind::Elem, i, j, std::move(lambda), n};
}

Generator sympl_letter(int i, int j, RingElement z, int n) {
    if (i == j || i < 1 || j < 1 || i > n || j > n || n % 2 != 0)
        throw dimension_mismatch("bad symplectic letter indices");
    return Generator{Generator::Kind::SymplElem, i, j, std::move(z), n};
}

Generator diag_letter(int j, const RingPtr& ring, int n) {
    if (j < 1 || j > n) throw dimension_mismatch("bad diagonal letter index");
    // the placeholder parameter only carries the ring
    return Generator{Generator::Kind::DiagSign, 0, j, ring->one(), n};
}

Matrix letter_matrix(const Letter& l, const RingPtr& ring) {
    if (std::holds_alternative<Generator>(l)) {
        const Generator& g = std::get<Generator>(l);
        switch (g.kind) {
        case Generator::Kind::Elem: return elem_gen(g.i, g.j, g.param, g.size);
        case Generator::Kind::SymplElem: return sympl_gen(g.i, g.j, g.param, g.size);
        case Generator::Kind::DiagSign: return diag_sign(g.j, ring, g.size);
        }
    }
    const ConjFrame& f = std::get<ConjFrame>(l);
    Matrix outer = word_eval(*f.outer);
    Matrix inner = word_eval(*f.inner);
    Matrix outer_inv = word_eval(word_inverse(*f.outer));
    return outer * inner * outer_inv;
}

Matrix word_eval(const GroupWord& w) {
    Matrix acc = Matrix::identity(w.ring, w.size);
    for (const auto& l : w.letters) acc = acc * letter_matrix(l, w.ring);
    return acc;
}

GroupWord word_inverse(const GroupWord& w) {
    GroupWord out = GroupWord::empty(w.ring, w.size, w.flavor);
    out.relative_ideal = w.relative_ideal;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (std::holds_alternative<Generator>(*it)) {
            Generator g = std::get<Generator>(*it);
            if (g.kind != Generator::Kind::DiagSign) g.param = -g.param; // delta_j is an involution
            out.letters.emplace_back(std::move(g));
        } else {
            const ConjFrame& f = std::get<ConjFrame>(*it);
            ConjFrame inv{f.outer, std::make_shared<const GroupWord>(word_inverse(*f.inner))};
            out.letters.emplace_back(std::move(inv));
        }
    }
    return out;
}

GroupWord transposition_word(int i, int j, const RingPtr& ring, int n) {
    if (i == j) throw dimension_mismatch("transposition needs i != j");
    GroupWord w = GroupWord::empty(ring, n, Flavor::Linear);
    w.append(elem_letter(j, i, ring->one(), n));
    w.append(elem_letter(i, j, -ring->one(), n));
    w.append(elem_letter(j, i, ring->one(), n));
    w.append(diag_letter(j, ring, n));
    return w;
}

// ---------------------------------------------------------------------------
// Relative certificates
// ---------------------------------------------------------------------------

namespace {

void validate_innermost(const GroupWord& w, const Ideal& ideal) {
    for (const auto& l : w.letters) {
        if (std::holds_alternative<Generator>(l)) {
            const Generator& g = std::get<Generator>(l);
            if (g.kind == Generator::Kind::DiagSign)
                throw error("diagonal sign letters are not relative generators");
            if (!ideal_contains(ideal, g.param))
                throw error("relative word parameter lies outside the ideal");
        } else {
            // the outer conjugator is unconstrained; the inner word must certify
            validate_innermost(*std::get<ConjFrame>(l).inner, ideal);
        }
    }
}

} // namespace

void validate_relative(const GroupWord& w) {
    if (!w.relative_ideal) return;
    validate_innermost(w, *w.relative_ideal);
}

// ---------------------------------------------------------------------------
// Random words
// ---------------------------------------------------------------------------

namespace {

RingElement random_nonzero(const RingPtr& R, Rng& rng) {
    for (int t = 0; t < 64; ++t) {
        RingElement e = R->random_element(rng);
        if (!e.is_zero()) return e;
    }
    return R->one();
}

RingElement random_ideal_element(const Ideal& I, Rng& rng) {
    RingElement s = I.ring->zero();
    for (const auto& g : I.generators) s = s + I.ring->random_element(rng) * g;
    return s;
}

std::pair<int, int> random_index_pair(int size, Rng& rng) {
    int i = 1 + int(rng.below(size));
    int j = 1 + int(rng.below(size - 1));
    if (j >= i) ++j;
    return {i, j};
}

} // namespace

GroupWord random_word(const RingPtr& ring, int size, Flavor flavor, int length, Rng& rng) {
    GroupWord w = GroupWord::empty(ring, size, flavor);
    for (int k = 0; k < length; ++k) {
        auto [i, j] = random_index_pair(size, rng);
        RingElement p = random_nonzero(ring, rng);
        if (flavor == Flavor::Symplectic)
            w.append(sympl_letter(i, j, std::move(p), size));
        else
            w.append(elem_letter(i, j, std::move(p), size));
    }
    return w;
}

GroupWord random_relative_word(const RingPtr& ring, int size, Flavor flavor,
                               const Ideal& ideal, int length, Rng& rng) {
    GroupWord w = GroupWord::empty(ring, size, flavor);
    w.relative_ideal = ideal;
    for (int k = 0; k < length; ++k) {
        auto [i, j] = random_index_pair(size, rng);
        RingElement p = random_ideal_element(ideal, rng);
        Generator g = (flavor == Flavor::Symplectic) ? sympl_letter(i, j, std::move(p), size)
                                                     : elem_letter(i, j, std::move(p), size);
        if (rng.coin()) {
            w.append(std::move(g));
        } else {
            auto outer = std::make_shared<const GroupWord>(
                random_word(ring, size, flavor, 1 + int(rng.below(3)), rng));
            auto inner = std::make_shared<const GroupWord>([&] {
                GroupWord iw = GroupWord::empty(ring, size, flavor);
                iw.append(std::move(g));
                return iw;
            }());
            w.append(ConjFrame{outer, inner});
        }
    }
    validate_relative(w);
    return w;
}

} // namespace esym
