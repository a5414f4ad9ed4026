#include "esym/orbit.hpp"

#include <algorithm>

namespace esym {

// ---------------------------------------------------------------------------
// FiniteRing
// ---------------------------------------------------------------------------

FiniteRing::FiniteRing(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_->is_finite())
        throw error("orbit enumeration needs a finite ring (Modular, or Excision over Modular)");

    if (ring_->kind() == RingKind::Modular) {
        unsigned long m = ring_->modulus().get_ui();
        for (unsigned long v = 0; v < m; ++v) elems_.push_back(ring_->from_int(long(v)));
    } else {
        // Excision over a Modular base: enumerate the ideal set of the base,
        // then all pairs (a, i)
        const RingPtr& base = ring_->base();
        unsigned long m = base->modulus().get_ui();
        std::vector<RingElement> ideal_set;
        for (unsigned long v = 0; v < m; ++v) {
            RingElement e = base->from_int(long(v));
            if (ideal_contains(ring_->ideal(), e)) ideal_set.push_back(e);
        }
        for (unsigned long a = 0; a < m; ++a)
            for (const auto& i : ideal_set)
                elems_.push_back(ring_->make_pair(base->from_int(long(a)), i));
    }
    if (elems_.size() > 0xFFFF) throw cap_exceeded("finite ring too large for table indices");

    const std::size_t n = elems_.size();
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    std::map<std::string, std::uint16_t> lookup;
    for (std::size_t i = 0; i < n; ++i) lookup[elems_[i].to_string()] = std::uint16_t(i);
    auto find = [&](const RingElement& e) {
        auto it = lookup.find(e.to_string());
        if (it == lookup.end()) throw internal_check_failed("finite ring table incomplete");
        return it->second;
    };
    for (std::size_t a = 0; a < n; ++a) {
        neg_[a] = find(-elems_[a]);
        for (std::size_t b = 0; b < n; ++b) {
            add_[a * n + b] = find(elems_[a] + elems_[b]);
            mul_[a * n + b] = find(elems_[a] * elems_[b]);
        }
    }
    zero_ = find(ring_->zero());
    one_ = find(ring_->one());
}

std::uint16_t FiniteRing::index_of(const RingElement& e) const {
    if (!e.ring()->equals(*ring_)) throw ring_mismatch("element from a foreign ring");
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] == e) return std::uint16_t(i);
    throw internal_check_failed("element missing from finite ring table");
}

std::vector<std::uint16_t> FiniteRing::ideal_members(const Ideal& ideal) const {
    std::vector<std::uint16_t> out;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (ideal_contains(ideal, elems_[i])) out.push_back(std::uint16_t(i));
    return out;
}

// ---------------------------------------------------------------------------
// Canonical generator sets
// ---------------------------------------------------------------------------

std::vector<TableGen> canonical_generators(const FiniteRing& fr, int size, Flavor flavor,
                                           const std::optional<Ideal>& param_ideal) {
    std::vector<std::uint16_t> params;
    if (param_ideal) {
        params = fr.ideal_members(*param_ideal);
    } else {
        params.resize(fr.size());
        for (std::size_t i = 0; i < params.size(); ++i) params[i] = std::uint16_t(i);
    }

    // index-form conversion happens against the table once per generator
    std::vector<TableGen> out;
    for (int i = 1; i <= size; ++i) {
        for (int j = 1; j <= size; ++j) {
            if (i == j) continue;
            for (auto p : params) {
                if (p == fr.zero_index()) continue;
                const RingElement& z = fr.element(p);
                Matrix m = (flavor == Flavor::Symplectic) ? sympl_gen(i, j, z, size)
                                                          : elem_gen(i, j, z, size);
                TableGen g;
                g.mat.resize(std::size_t(size) * size);
                for (int r = 0; r < size; ++r)
                    for (int c = 0; c < size; ++c)
                        g.mat[std::size_t(r) * size + c] = fr.index_of(m.at(r, c));
                g.letter = (flavor == Flavor::Symplectic)
                               ? Letter(sympl_letter(i, j, z, size))
                               : Letter(elem_letter(i, j, z, size));
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// OrbitSpace
// ---------------------------------------------------------------------------

OrbitSpace::OrbitSpace(RingPtr ring, int len, std::uint64_t cap)
    : fr_(std::move(ring)), len_(len) {
    if (len_ <= 0) throw dimension_mismatch("row length must be positive");
    states_ = 1;
    for (int k = 0; k < len_; ++k) {
        if (states_ > cap / fr_.size() + 1) throw cap_exceeded("orbit state space exceeds cap");
        states_ *= fr_.size();
    }
    if (states_ > cap) throw cap_exceeded("orbit state space exceeds cap");
}

std::vector<std::uint16_t> OrbitSpace::to_indices(const Row& v) const {
    if (int(v.size()) != len_) throw dimension_mismatch("row length mismatch");
    std::vector<std::uint16_t> out(len_);
    for (int k = 0; k < len_; ++k) out[k] = fr_.index_of(v[k]);
    return out;
}

std::uint64_t OrbitSpace::encode_indices(const std::vector<std::uint16_t>& v) const {
    std::uint64_t s = 0;
    for (int k = len_ - 1; k >= 0; --k) s = s * fr_.size() + v[k];
    return s;
}

std::vector<std::uint16_t> OrbitSpace::decode_indices(std::uint64_t s) const {
    std::vector<std::uint16_t> v(len_);
    for (int k = 0; k < len_; ++k) {
        v[k] = std::uint16_t(s % fr_.size());
        s /= fr_.size();
    }
    return v;
}

std::uint64_t OrbitSpace::encode(const Row& v) const { return encode_indices(to_indices(v)); }

Row OrbitSpace::decode(std::uint64_t s) const {
    auto idx = decode_indices(s);
    std::vector<RingElement> e;
    e.reserve(len_);
    for (int k = 0; k < len_; ++k) e.push_back(fr_.element(idx[k]));
    return Row{fr_.ring(), std::move(e)};
}

std::vector<std::uint16_t> OrbitSpace::apply(const std::vector<std::uint16_t>& v,
                                             const std::vector<std::uint16_t>& m) const {
    std::vector<std::uint16_t> out(len_, fr_.zero_index());
    for (int c = 0; c < len_; ++c) {
        std::uint16_t acc = fr_.zero_index();
        for (int k = 0; k < len_; ++k)
            acc = fr_.add(acc, fr_.mul(v[k], m[std::size_t(k) * len_ + c]));
        out[c] = acc;
    }
    return out;
}

std::vector<std::uint16_t> OrbitSpace::matrix_indices(const Matrix& m) const {
    if (m.nrows() != len_ || m.ncols() != len_)
        throw dimension_mismatch("matrix size differs from row length");
    std::vector<std::uint16_t> out(std::size_t(len_) * len_);
    for (int r = 0; r < len_; ++r)
        for (int c = 0; c < len_; ++c)
            out[std::size_t(r) * len_ + c] = fr_.index_of(m.at(r, c));
    return out;
}

std::vector<std::uint16_t> OrbitSpace::mat_mul(const std::vector<std::uint16_t>& a,
                                               const std::vector<std::uint16_t>& b) const {
    const int n = len_;
    std::vector<std::uint16_t> out(std::size_t(n) * n, fr_.zero_index());
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::uint16_t acc = fr_.zero_index();
            for (int k = 0; k < n; ++k)
                acc = fr_.add(acc, fr_.mul(a[std::size_t(r) * n + k], b[std::size_t(k) * n + c]));
            out[std::size_t(r) * n + c] = acc;
        }
    return out;
}

std::vector<std::uint64_t> OrbitSpace::closure(std::vector<std::uint64_t> starts,
                                               const std::vector<TableGen>& gens) const {
    std::vector<bool> visited(states_, false);
    std::vector<std::uint64_t> out;
    std::vector<std::uint64_t> frontier;
    for (auto s : starts) {
        if (s >= states_) throw dimension_mismatch("state out of range");
        if (!visited[s]) {
            visited[s] = true;
            out.push_back(s);
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto s : frontier) {
            auto v = decode_indices(s);
            for (const auto& g : gens) {
                std::uint64_t t = encode_indices(apply(v, g.mat));
                if (!visited[t]) {
                    visited[t] = true;
                    out.push_back(t);
                    next.push_back(t);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// PathTable
// ---------------------------------------------------------------------------

PathTable::PathTable(const OrbitSpace& space, std::uint64_t start,
                     const std::vector<TableGen>& gens, Flavor flavor, RingPtr ring)
    : space_(space), start_(start), gens_(gens), flavor_(flavor), ring_(std::move(ring)) {
    for (const auto& g : gens_)
        if (!g.letter) throw error("path recovery needs letters on every generator");
    parent_gen_.assign(space_.num_states(), -1);
    parent_state_.assign(space_.num_states(), 0);
    std::vector<std::uint64_t> frontier{start_};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto s : frontier) {
            auto v = space_.decode_indices(s);
            for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
                std::uint64_t t = space_.encode_indices(space_.apply(v, gens_[gi].mat));
                if (t != start_ && parent_gen_[t] < 0) {
                    parent_gen_[t] = std::int32_t(gi);
                    parent_state_[t] = s;
                    next.push_back(t);
                }
            }
        }
        frontier = std::move(next);
    }
}

std::vector<std::uint64_t> PathTable::reached_sorted() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < space_.num_states(); ++s)
        if (reached(s)) out.push_back(s);
    return out;
}

GroupWord PathTable::word_to(std::uint64_t target) const {
    if (!reached(target)) throw error("target row is not in the recorded orbit");
    std::vector<Letter> rev;
    std::uint64_t s = target;
    while (s != start_) {
        rev.push_back(*gens_[parent_gen_[s]].letter);
        s = parent_state_[s];
    }
    GroupWord w = GroupWord::empty(ring_, space_.len(), flavor_);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) w.letters.push_back(*it);
    return w;
}

// ---------------------------------------------------------------------------
// orbit_bfs with automatic inverse closure
// ---------------------------------------------------------------------------

std::vector<Row> orbit_bfs(const Row& v, const std::vector<Matrix>& gens, std::uint64_t cap) {
    OrbitSpace space(v.ring, int(v.size()), cap);
    std::map<std::vector<std::uint16_t>, bool> present;
    std::vector<TableGen> tg;
    for (const auto& m : gens) {
        TableGen g;
        g.mat = space.matrix_indices(m);
        if (!present.count(g.mat)) {
            present[g.mat] = true;
            tg.push_back(std::move(g));
        }
    }
    // identity in index form
    std::vector<std::uint16_t> id(std::size_t(space.len()) * space.len(),
                                  space.table().zero_index());
    for (int k = 0; k < space.len(); ++k)
        id[std::size_t(k) * space.len() + k] = space.table().one_index();
    // close under inverses: g^-1 = g^(k-1) where g^k = I (finite ring, finite order)
    std::size_t initial = tg.size();
    for (std::size_t i = 0; i < initial; ++i) {
        std::vector<std::uint16_t> prev = id, cur = tg[i].mat;
        std::uint64_t guard = 0;
        while (cur != id) {
            prev = cur;
            cur = space.mat_mul(cur, tg[i].mat);
            if (++guard > 1'000'000) throw cap_exceeded("generator order too large");
        }
        if (!present.count(prev)) {
            present[prev] = true;
            tg.push_back(TableGen{prev, std::nullopt});
        }
    }
    auto enc = space.closure({space.encode(v)}, tg);
    std::vector<Row> out;
    out.reserve(enc.size());
    for (auto s : enc) out.push_back(space.decode(s));
    return out;
}

std::vector<Row> orbit_bfs(const UnimodularRow& v, const std::vector<Matrix>& gens,
                           std::uint64_t cap) {
    v.validate();
    return orbit_bfs(v.row, gens, cap);
}

// ---------------------------------------------------------------------------
// Relative orbits
// ---------------------------------------------------------------------------

namespace {

struct WordEntry {
    std::vector<std::uint16_t> mat, inv;
    std::vector<std::size_t> gen_ids; // indices into the absolute generator list
};

struct ConjGrowth {
    std::vector<TableGen> abs_gens;
    std::vector<TableGen> ideal_gens;
    std::vector<TableGen> abs_gen_inverses; // aligned with abs_gens
    std::vector<WordEntry> words;           // all conjugator words found so far
    std::size_t level_begin = 0;            // first word of the current top level
    std::map<std::vector<std::uint16_t>, bool> word_seen;
    std::map<std::vector<std::uint16_t>, bool> conj_seen;
    std::vector<TableGen> conj_gens;
    int depth = -1;

    ConjGrowth(const OrbitSpace& space, const Ideal& ideal, Flavor flavor)
        : abs_gens(canonical_generators(space.table(), space.len(), flavor, std::nullopt)),
          ideal_gens(canonical_generators(space.table(), space.len(), flavor, ideal)) {
        // canonical generator sets are inverse-closed: E_ij(z)^-1 = E_ij(-z)
        for (const auto& g : abs_gens) {
            TableGen inv;
            const Generator& gen = std::get<Generator>(*g.letter);
            Matrix m = (flavor == Flavor::Symplectic)
                           ? sympl_gen(gen.i, gen.j, -gen.param, gen.size)
                           : elem_gen(gen.i, gen.j, -gen.param, gen.size);
            inv.mat = space.matrix_indices(m);
            abs_gen_inverses.push_back(std::move(inv));
        }
    }

    GroupWord outer_word(const OrbitSpace& space, const WordEntry& w, Flavor flavor) const {
        GroupWord out = GroupWord::empty(space.table().ring(), space.len(), flavor);
        for (auto id : w.gen_ids) out.letters.push_back(*abs_gens[id].letter);
        return out;
    }

    // extend conjugator words to the next length and add the new conjugates
    void grow(const OrbitSpace& space, Flavor flavor, std::uint64_t conj_cap) {
        const int n = space.len();
        std::vector<std::uint16_t> id(std::size_t(n) * n, space.table().zero_index());
        for (int k = 0; k < n; ++k)
            id[std::size_t(k) * n + k] = space.table().one_index();

        std::vector<WordEntry> fresh;
        if (depth < 0) {
            WordEntry e{id, id, {}};
            word_seen[e.mat] = true;
            fresh.push_back(std::move(e));
        } else {
            for (std::size_t wi = level_begin; wi < words.size(); ++wi) {
                for (std::size_t gi = 0; gi < abs_gens.size(); ++gi) {
                    WordEntry e;
                    e.mat = space.mat_mul(words[wi].mat, abs_gens[gi].mat);
                    if (word_seen.count(e.mat)) continue;
                    e.inv = space.mat_mul(abs_gen_inverses[gi].mat, words[wi].inv);
                    e.gen_ids = words[wi].gen_ids;
                    e.gen_ids.push_back(gi);
                    word_seen[e.mat] = true;
                    fresh.push_back(std::move(e));
                    if (word_seen.size() > conj_cap)
                        throw cap_exceeded("conjugator word enumeration exceeds cap");
                }
            }
        }
        level_begin = words.size();
        for (auto& e : fresh) words.push_back(std::move(e));
        ++depth;

        for (std::size_t wi = level_begin; wi < words.size(); ++wi) {
            const WordEntry& w = words[wi];
            for (const auto& g : ideal_gens) {
                auto c = space.mat_mul(space.mat_mul(w.mat, g.mat), w.inv);
                if (conj_seen.count(c)) continue;
                conj_seen[c] = true;
                TableGen t;
                t.mat = c;
                if (w.gen_ids.empty()) {
                    t.letter = g.letter; // bare ideal-parameter generator
                } else {
                    auto outer = std::make_shared<const GroupWord>(
                        outer_word(space, w, flavor));
                    GroupWord inner = GroupWord::empty(space.table().ring(), space.len(),
                                                       flavor);
                    inner.letters.push_back(*g.letter);
                    t.letter = Letter(ConjFrame{outer,
                                                std::make_shared<const GroupWord>(inner)});
                }
                conj_gens.push_back(std::move(t));
                if (conj_seen.size() > conj_cap)
                    throw cap_exceeded("conjugated generator set exceeds cap");
            }
        }
    }
};

// upper set: absolute orbit filtered by rowwise congruence to v mod the ideal
std::vector<std::uint64_t> upper_set(const OrbitSpace& space, const Row& v,
                                     const Ideal& ideal, const std::vector<TableGen>& abs) {
    auto orbit = space.closure({space.encode(v)}, abs);
    const auto& fr = space.table();
    std::vector<std::vector<bool>> allowed(space.len(), std::vector<bool>(fr.size(), false));
    for (int k = 0; k < space.len(); ++k)
        for (std::size_t e = 0; e < fr.size(); ++e)
            allowed[k][e] = ideal_contains(ideal, fr.element(std::uint16_t(e)) - v[k]);
    std::vector<std::uint64_t> out;
    for (auto s : orbit) {
        auto idx = space.decode_indices(s);
        bool ok = true;
        for (int k = 0; k < space.len() && ok; ++k) ok = allowed[k][idx[k]];
        if (ok) out.push_back(s);
    }
    return out;
}

} // namespace

RelativeOrbitReport relative_orbit_certify(const OrbitSpace& space, const Row& v,
                                           const Ideal& ideal, Flavor flavor, int max_depth,
                                           std::uint64_t conj_cap) {
    ConjGrowth growth(space, ideal, flavor);
    RelativeOrbitReport rep;
    rep.upper = upper_set(space, v, ideal, growth.abs_gens);

    const std::uint64_t v0 = space.encode(v);
    std::vector<std::uint64_t> lower_prev;
    bool have_prev = false;
    while (growth.depth < max_depth) {
        growth.grow(space, flavor, conj_cap);
        rep.lower = space.closure({v0}, growth.conj_gens);
        rep.depth = growth.depth;
        if (rep.lower == rep.upper) {
            rep.certified = true;
            return rep;
        }
        if (have_prev && rep.lower == lower_prev) {
            // two consecutive levels agree; confirm closure under level L+1
            growth.grow(space, flavor, conj_cap);
            auto next = space.closure({v0}, growth.conj_gens);
            if (next == rep.lower) {
                rep.stabilized = true;
                rep.certified = (rep.lower == rep.upper);
                return rep;
            }
            rep.lower = std::move(next);
            rep.depth = growth.depth;
            if (rep.lower == rep.upper) {
                rep.certified = true;
                return rep;
            }
        }
        lower_prev = rep.lower;
        have_prev = true;
    }
    throw cap_exceeded("relative orbit did not certify or stabilize within the depth bound");
}

RelativePathTable::RelativePathTable(const OrbitSpace& space, std::uint64_t start,
                                     const Ideal& ideal, Flavor flavor, int max_depth,
                                     std::uint64_t conj_cap)
    : space_(space), start_(start), ideal_(ideal), flavor_(flavor) {
    ConjGrowth growth(space, ideal, flavor);
    auto upper = upper_set(space, space.decode(start), ideal, growth.abs_gens);
    std::vector<std::uint64_t> lower, lower_prev;
    bool have_prev = false;
    while (growth.depth < max_depth) {
        growth.grow(space, flavor, conj_cap);
        lower = space.closure({start}, growth.conj_gens);
        if (lower == upper) break; // every certifiable row already reachable
        if (have_prev && lower == lower_prev) {
            growth.grow(space, flavor, conj_cap);
            auto next = space.closure({start}, growth.conj_gens);
            if (next == lower) break;
            lower = std::move(next);
        }
        lower_prev = lower;
        have_prev = true;
    }
    conj_gens_ = growth.conj_gens;

    parent_gen_.assign(space_.num_states(), -1);
    parent_state_.assign(space_.num_states(), 0);
    std::vector<std::uint64_t> frontier{start_};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto s : frontier) {
            auto vv = space_.decode_indices(s);
            for (std::size_t gi = 0; gi < conj_gens_.size(); ++gi) {
                std::uint64_t t = space_.encode_indices(space_.apply(vv, conj_gens_[gi].mat));
                if (t != start_ && parent_gen_[t] < 0) {
                    parent_gen_[t] = std::int32_t(gi);
                    parent_state_[t] = s;
                    next.push_back(t);
                }
            }
        }
        frontier = std::move(next);
    }
}

bool RelativePathTable::reached(std::uint64_t s) const {
    return s == start_ || parent_gen_[s] >= 0;
}

GroupWord RelativePathTable::word_to(std::uint64_t target) const {
    if (!reached(target)) throw error("target row has no relative certificate path");
    std::vector<Letter> rev;
    std::uint64_t s = target;
    while (s != start_) {
        rev.push_back(*conj_gens_[parent_gen_[s]].letter);
        s = parent_state_[s];
    }
    GroupWord w = GroupWord::empty(space_.table().ring(), space_.len(), flavor_);
    w.relative_ideal = ideal_;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) w.letters.push_back(*it);
    validate_relative(w);
    return w;
}

} // namespace esym
