#include "esym/reduce.hpp"

namespace esym {

bool replay(const ReductionCertificate& c) { return c.input * word_eval(c.word) == c.output; }
bool replay(const MatrixCertificate& c) { return c.input * word_eval(c.word) == c.output; }

// ---------------------------------------------------------------------------
// Euclidean gcd engines. emit(s, t, lambda) records the column operation
// v[t] += lambda * v[s] (0-indexed positions); the engine applies it too.
// ---------------------------------------------------------------------------

namespace {

using IntEmit = std::function<void(int, int, const mpz_class&)>;

// reduce the active positions to at most one nonzero; returns its position
int euclid_int(std::vector<mpz_class>& vals, const std::vector<int>& active,
               const IntEmit& emit) {
    while (true) {
        std::vector<int> nz;
        for (int i : active)
            if (vals[i] != 0) nz.push_back(i);
        if (nz.empty()) return -1;
        if (nz.size() == 1) return nz[0];
        int p = nz[0];
        for (int i : nz)
            if (mpz_cmpabs(vals[i].get_mpz_t(), vals[p].get_mpz_t()) < 0) p = i;
        for (int k : nz) {
            if (k == p) continue;
            mpz_class q = vals[k] / vals[p]; // truncated, |remainder| < |pivot|
            if (q != 0) {
                emit(p, k, -q);
                vals[k] -= q * vals[p];
            }
        }
    }
}

long poly_degree(const RingElement& e) {
    const Poly& p = e.as_poly();
    return p.terms.empty() ? -1 : long(p.terms.begin()->first.exp[0]);
}

// quotient of a by b over F_p[x]; the remainder has smaller degree
RingElement poly_quotient(const RingElement& a, const RingElement& b) {
    const RingPtr& P = a.ring();
    const mpz_class& mod = P->base()->modulus();
    RingElement q = P->zero();
    RingElement r = a;
    while (poly_degree(r) >= poly_degree(b)) {
        const auto& [rm, rc] = *r.as_poly().terms.begin();
        const auto& [bm, bc] = *b.as_poly().terms.begin();
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), bc.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw internal_check_failed("leading coefficient not invertible");
        Poly t;
        Monomial qm;
        qm.exp = {rm.exp[0] - bm.exp[0]};
        t.terms.emplace(qm, rc * inv);
        RingElement term = P->from_poly(std::move(t));
        q = q + term;
        r = r - term * b;
    }
    return q;
}

using PolyEmit = std::function<void(int, int, const RingElement&)>;

int euclid_poly(std::vector<RingElement>& vals, const std::vector<int>& active,
                const PolyEmit& emit) {
    while (true) {
        std::vector<int> nz;
        for (int i : active)
            if (!vals[i].is_zero()) nz.push_back(i);
        if (nz.empty()) return -1;
        if (nz.size() == 1) return nz[0];
        int p = nz[0];
        for (int i : nz)
            if (poly_degree(vals[i]) < poly_degree(vals[p])) p = i;
        for (int k : nz) {
            if (k == p) continue;
            RingElement q = poly_quotient(vals[k], vals[p]);
            if (!q.is_zero()) {
                emit(p, k, -q);
                vals[k] = vals[k] - q * vals[p];
            }
        }
    }
}

bool is_univariate_prime_poly(const Ring& R) {
    return R.kind() == RingKind::Poly && R.variables().size() == 1 &&
           R.base()->kind() == RingKind::Modular && is_prime_modulus(R.base()->modulus());
}

// inverse of a unit: g itself over Z (g = ±1), modular inverse over Z/m,
// constant inverse over F_p[x]
RingElement unit_inverse(const RingElement& g) {
    const Ring& R = *g.ring();
    switch (R.kind()) {
    case RingKind::Integers:
        return g; // only ±1 are units
    case RingKind::Modular: {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), g.as_int().get_mpz_t(), R.modulus().get_mpz_t()) == 0)
            throw not_unimodular("pivot is not a unit");
        return R.from_mpz(inv);
    }
    case RingKind::Poly: {
        const auto& [m, c] = *g.as_poly().terms.begin();
        if (m.total_degree() != 0) throw not_unimodular("pivot is not a constant");
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), R.base()->modulus().get_mpz_t()) == 0)
            throw not_unimodular("pivot constant is not a unit");
        return R.from_mpz(inv);
    }
    default:
        throw not_unimodular("no unit inverse in this ring");
    }
}

bool is_unit(const RingElement& g) {
    const Ring& R = *g.ring();
    switch (R.kind()) {
    case RingKind::Integers:
        return g.as_int() == 1 || g.as_int() == -1;
    case RingKind::Modular: {
        mpz_class inv;
        return mpz_invert(inv.get_mpz_t(), g.as_int().get_mpz_t(),
                          R.modulus().get_mpz_t()) != 0;
    }
    case RingKind::Poly:
        return !g.is_zero() && poly_degree(g) == 0 &&
               [&] {
                   mpz_class inv;
                   return mpz_invert(inv.get_mpz_t(),
                                     g.as_poly().terms.begin()->second.get_mpz_t(),
                                     R.base()->modulus().get_mpz_t()) != 0;
               }();
    default:
        return false;
    }
}

// generic reduction skeleton shared by the linear and symplectic reducers.
// apply_op(s, t, lambda) appends one letter realizing v[t] += lambda v[s]
// (positions where the emitted generator acts purely, see the call sites).
struct ColumnOps {
    Row vals;
    GroupWord word;

    ColumnOps(const Row& v, Flavor flavor)
        : vals(v), word(GroupWord::empty(v.ring, int(v.size()), flavor)) {}

    void apply(int s, int t, const RingElement& lambda) {
        if (lambda.is_zero()) return;
        if (word.flavor == Flavor::Symplectic)
            word.append(sympl_letter(s + 1, t + 1, lambda, word.size));
        else
            word.append(elem_letter(s + 1, t + 1, lambda, word.size));
        vals[t] = vals[t] + lambda * vals[s];
    }

    // euclid over the given positions; returns surviving position or -1
    int run_euclid(const std::vector<int>& active) {
        const Ring& R = *vals.ring;
        if (R.kind() == RingKind::Poly) {
            std::vector<RingElement> work = vals.entries;
            int p = euclid_poly(work, active, [&](int s, int t, const RingElement& lam) {
                apply(s, t, lam);
            });
            return p;
        }
        std::vector<mpz_class> work;
        for (const auto& e : vals.entries) work.push_back(e.as_int());
        int p = euclid_int(work, active, [&](int s, int t, const mpz_class& lam) {
            apply(s, t, vals.ring->from_mpz(lam));
        });
        return p;
    }

    // move the single nonzero from position s to position t (t currently zero)
    void move(int s, int t) {
        if (!vals[t].is_zero()) throw internal_check_failed("move target not clear");
        apply(s, t, vals.ring->one());
        apply(t, s, -vals.ring->one());
    }

    // turn (g, 0) at positions (p0, p1) into (1, 0); g must be a unit
    void normalize(int p0, int p1) {
        const RingPtr& R = vals.ring;
        RingElement g = vals[p0];
        if (g == R->one()) return;
        RingElement u = unit_inverse(g);
        apply(p0, p1, u * (R->one() - g)); // second slot becomes 1 - g
        apply(p1, p0, R->one());           // first slot becomes 1
        apply(p0, p1, g - R->one());       // second slot returns to 0
    }
};

void check_reducible_ring(const Ring& R) {
    if (R.kind() == RingKind::Integers || R.kind() == RingKind::Modular) return;
    if (is_univariate_prime_poly(R)) return;
    throw error("Euclidean reduction supports Z, Z/m and F_p[x] (one variable)");
}

} // namespace

ReductionCertificate reduce_to_e1(const Row& v) {
    if (v.size() < 2) throw dimension_mismatch("reduction needs length >= 2");
    check_reducible_ring(*v.ring);
    const int n = int(v.size());

    ColumnOps ops(v, Flavor::Linear);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    int p = ops.run_euclid(all);
    if (p < 0) throw not_unimodular("zero row");
    if (!is_unit(ops.vals[p])) throw not_unimodular("gcd of the entries is not a unit");
    if (p != 0) ops.move(p, 0);
    ops.normalize(0, 1);

    Row e1 = unit_row(v.ring, v.size(), 0);
    if (!(v * word_eval(ops.word) == e1))
        throw internal_check_failed("reduction certificate failed to replay");
    return ReductionCertificate{v, std::move(ops.word), std::move(e1)};
}

ReductionCertificate reduce_to_e1(const UnimodularRow& v) {
    v.validate();
    return reduce_to_e1(v.row);
}

ReductionCertificate reduce_to_e1_symplectic(const Row& v) {
    if (v.size() < 2 || v.size() % 2 != 0)
        throw dimension_mismatch("symplectic reduction needs even length >= 2");
    check_reducible_ring(*v.ring);
    const int n = int(v.size());

    // Within a coordinate pair, se generators give plain column operations.
    // Across pairs, operations between odd coordinates only touch even
    // coordinates through multiples of other even coordinates, so once every
    // even slot is cleared the cross operations act purely as well.
    ColumnOps ops(v, Flavor::Symplectic);
    std::vector<int> odd_positions;
    for (int k = 0; k + 1 < n; k += 2) {
        int s = ops.run_euclid({k, k + 1});
        if (s == k + 1) ops.move(k + 1, k);
        odd_positions.push_back(k);
    }
    int p = ops.run_euclid(odd_positions);
    if (p < 0) throw not_unimodular("zero row");
    if (!is_unit(ops.vals[p])) throw not_unimodular("gcd of the entries is not a unit");
    if (p != 0) ops.move(p, 0);
    ops.normalize(0, 1);

    Row e1 = unit_row(v.ring, v.size(), 0);
    if (!(v * word_eval(ops.word) == e1))
        throw internal_check_failed("symplectic reduction failed to replay");
    return ReductionCertificate{v, std::move(ops.word), std::move(e1)};
}

// ---------------------------------------------------------------------------
// Shortening
// ---------------------------------------------------------------------------

namespace {

// unimodularity witness over a finite table ring: BFS over partial sums with
// provenance, reaching 1 from 0 by adding multiples of the entries
std::optional<Row> finite_witness(const Row& v) {
    FiniteRing fr(v.ring);
    const std::uint16_t one = fr.one_index();
    std::vector<std::int32_t> prev_state(fr.size(), -1);
    std::vector<std::uint16_t> via_entry(fr.size(), 0), via_coeff(fr.size(), 0);
    std::vector<std::uint16_t> entry_idx;
    for (const auto& e : v.entries) entry_idx.push_back(fr.index_of(e));

    std::vector<std::uint16_t> frontier{fr.zero_index()};
    std::vector<bool> seen(fr.size(), false);
    seen[fr.zero_index()] = true;
    while (!frontier.empty() && !seen[one]) {
        std::vector<std::uint16_t> next;
        for (auto s : frontier) {
            for (std::size_t i = 0; i < entry_idx.size(); ++i) {
                for (std::uint16_t c = 0; c < fr.size(); ++c) {
                    std::uint16_t t = fr.add(s, fr.mul(c, entry_idx[i]));
                    if (!seen[t]) {
                        seen[t] = true;
                        prev_state[t] = s;
                        via_entry[t] = std::uint16_t(i);
                        via_coeff[t] = c;
                        next.push_back(t);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    if (!seen[one]) return std::nullopt;
    std::vector<RingElement> coeffs(v.size(), v.ring->zero());
    std::uint16_t s = one;
    while (s != fr.zero_index()) {
        coeffs[via_entry[s]] = coeffs[via_entry[s]] + fr.element(via_coeff[s]);
        s = std::uint16_t(prev_state[s]);
    }
    return Row{v.ring, std::move(coeffs)};
}

std::optional<Row> unimodular_witness(const Row& v) {
    const Ring& R = *v.ring;
    if (R.kind() == RingKind::Integers || R.kind() == RingKind::Modular) {
        Ideal gens{v.ring, v.entries};
        auto w = ideal_witness(gens, v.ring->one());
        if (!w) return std::nullopt;
        return Row{v.ring, std::move(*w)};
    }
    if (R.is_finite()) return finite_witness(v);
    throw error("unimodularity witness unsupported for this ring");
}

// deterministic candidate values for one t coordinate: 0, then ideal members
// by increasing size
std::vector<RingElement> t_candidates(const Ideal& ideal, long bound) {
    const Ring& R = *ideal.ring;
    std::vector<RingElement> out;
    if (R.kind() == RingKind::Integers) {
        mpz_class d = 0;
        for (const auto& g : ideal.generators) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(),
                                                       g.as_int().get_mpz_t());
        out.push_back(R.zero());
        if (d == 0) return out;
        for (long k = 1; k <= bound; ++k) {
            out.push_back(R.from_mpz(d * k));
            out.push_back(R.from_mpz(d * -k));
        }
        return out;
    }
    if (R.is_finite()) {
        FiniteRing fr(ideal.ring);
        for (auto idx : fr.ideal_members(ideal)) out.push_back(fr.element(idx));
        return out;
    }
    throw error("shorten supports finite rings and Z");
}

} // namespace

ShortenResult shorten(const Row& v, const std::vector<std::size_t>& S, const Ideal& ideal,
                      long bound) {
    if (v.size() < 2) throw dimension_mismatch("shorten needs length >= 2");
    if (!ideal.ring->equals(*v.ring)) throw ring_mismatch("ideal over a different ring");
    const std::size_t m = v.size() - 1;
    for (auto s : S)
        if (s >= m) throw dimension_mismatch("S indexes the first m coordinates");
    const RingElement& last = v[m];

    auto candidates = t_candidates(ideal, bound);
    std::vector<std::size_t> odo(S.size(), 0);
    while (true) {
        std::vector<RingElement> t(m, v.ring->zero());
        for (std::size_t k = 0; k < S.size(); ++k) t[S[k]] = candidates[odo[k]];
        std::vector<RingElement> e;
        for (std::size_t i = 0; i < m; ++i) e.push_back(v[i] + last * t[i]);
        Row shortened{v.ring, std::move(e)};
        if (auto w = unimodular_witness(shortened)) {
            if (inner_product(shortened, *w) != v.ring->one())
                throw internal_check_failed("witness does not certify unimodularity");
            return ShortenResult{std::move(t), std::move(shortened), std::move(*w)};
        }
        // odometer step
        std::size_t k = 0;
        while (k < S.size() && ++odo[k] == candidates.size()) odo[k++] = 0;
        if (k == S.size()) break;
    }
    throw search_exhausted("no shortening vector found within the bound");
}

// ---------------------------------------------------------------------------
// Symplectic peel
// ---------------------------------------------------------------------------

PeelResult symplectic_peel(const Matrix& alpha, const GroupWord& eps_prime,
                           const std::optional<Ideal>& relative_ideal) {
    const int n = alpha.nrows();
    if (!alpha.is_square() || n % 2 != 0 || n < 4)
        throw dimension_mismatch("peel needs an even size >= 4");
    const RingPtr& R = alpha.ring();
    if (!is_symplectic(alpha, standard_form(R, n / 2)))
        throw not_symplectic("peel input is not symplectic");
    if (eps_prime.flavor != Flavor::Symplectic || eps_prime.size != n ||
        !eps_prime.ring->equals(*R))
        throw error("eps' must be a symplectic word of matching size and ring");
    if (relative_ideal) {
        if (!congruent_mod(alpha, Matrix::identity(R, n), *relative_ideal))
            throw error("relative peel needs alpha congruent to the identity");
        GroupWord check = eps_prime;
        check.relative_ideal = *relative_ideal;
        validate_relative(check);
    }

    Matrix beta = alpha * word_eval(eps_prime);
    Row e1 = unit_row(R, std::size_t(n), 0);
    for (int c = 0; c < n; ++c)
        if (beta.at(0, c) != e1[c]) throw first_row_not_e1("eps' does not reduce the first row");

    // first row e1 forces the second column to be e2^t on a symplectic matrix
    for (int r = 0; r < n; ++r)
        if (beta.at(r, 1) != (r == 1 ? R->one() : R->zero()))
            throw internal_check_failed("second column is not e2 despite first row e1");

    GroupWord eps = eps_prime;
    eps.relative_ideal = relative_ideal;

    // clear row 2 with se_2j(z); j = 1 goes last since the two-term letters
    // also feed column 1
    std::vector<int> order;
    for (int j = 3; j <= n; ++j) order.push_back(j);
    order.push_back(1);
    for (int j : order) {
        const RingElement& c = beta.at(1, j - 1);
        if (c.is_zero()) continue;
        RingElement z = -c;
        if (relative_ideal && !ideal_contains(*relative_ideal, z))
            throw internal_check_failed("clearing parameter escaped the ideal");
        eps.append(sympl_letter(2, j, z, n));
        beta = beta * sympl_gen(2, j, z, n);
        for (int cc = 0; cc < n; ++cc)
            if (beta.at(0, cc) != e1[cc])
                throw internal_check_failed("row-2 clearing touched the first row");
    }
    for (int c = 0; c < n; ++c)
        if (beta.at(1, c) != (c == 1 ? R->one() : R->zero()))
            throw internal_check_failed("second row not cleared to e2");
    // second row e2 forces the first column to be e1^t
    for (int r = 0; r < n; ++r)
        if (beta.at(r, 0) != (r == 0 ? R->one() : R->zero()))
            throw internal_check_failed("first column is not e1 after clearing");

    std::vector<RingElement> ge;
    ge.reserve(std::size_t(n - 2) * (n - 2));
    for (int r = 2; r < n; ++r)
        for (int c = 2; c < n; ++c) ge.push_back(beta.at(r, c));
    Matrix gamma(R, n - 2, n - 2, std::move(ge));
    if (!is_symplectic(gamma, standard_form(R, (n - 2) / 2)))
        throw internal_check_failed("peeled block is not symplectic");
    if (relative_ideal &&
        !congruent_mod(gamma, Matrix::identity(R, n - 2), *relative_ideal))
        throw internal_check_failed("peeled block escaped the relative congruence");
    return PeelResult{std::move(eps), std::move(gamma)};
}

// ---------------------------------------------------------------------------
// Reducers and iterated peel
// ---------------------------------------------------------------------------

RowReducer make_bfs_reducer(const RingPtr& ring) {
    struct Cache {
        std::map<int, std::shared_ptr<OrbitSpace>> spaces;
        std::map<int, std::shared_ptr<PathTable>> paths;
    };
    auto cache = std::make_shared<Cache>();
    return [ring, cache](const Matrix& alpha) -> GroupWord {
        const int n = alpha.nrows();
        if (!cache->paths.count(n)) {
            auto space = std::make_shared<OrbitSpace>(ring, n);
            auto gens =
                canonical_generators(space->table(), n, Flavor::Symplectic, std::nullopt);
            auto table = std::make_shared<PathTable>(
                *space, space->encode(unit_row(ring, std::size_t(n), 0)), gens,
                Flavor::Symplectic, ring);
            cache->spaces[n] = space;
            cache->paths[n] = table;
        }
        const auto& space = *cache->spaces[n];
        Row v = unit_row(ring, std::size_t(n), 0) * alpha;
        std::uint64_t target = space.encode(v);
        if (!cache->paths[n]->reached(target))
            throw error("first row is outside the elementary symplectic orbit");
        return word_inverse(cache->paths[n]->word_to(target));
    };
}

RowReducer make_relative_bfs_reducer(const RingPtr& ring, const Ideal& ideal) {
    struct Cache {
        std::map<int, std::shared_ptr<OrbitSpace>> spaces;
        std::map<int, std::shared_ptr<RelativePathTable>> paths;
    };
    auto cache = std::make_shared<Cache>();
    return [ring, ideal, cache](const Matrix& alpha) -> GroupWord {
        const int n = alpha.nrows();
        if (!cache->paths.count(n)) {
            auto space = std::make_shared<OrbitSpace>(ring, n);
            auto table = std::make_shared<RelativePathTable>(
                *space, space->encode(unit_row(ring, std::size_t(n), 0)), ideal,
                Flavor::Symplectic);
            cache->spaces[n] = space;
            cache->paths[n] = table;
        }
        const auto& space = *cache->spaces[n];
        Row v = unit_row(ring, std::size_t(n), 0) * alpha;
        std::uint64_t target = space.encode(v);
        if (!cache->paths[n]->reached(target))
            throw error("first row has no relative certificate path");
        return word_inverse(cache->paths[n]->word_to(target));
    };
}

RowReducer make_euclidean_reducer() {
    return [](const Matrix& alpha) -> GroupWord {
        Row v = unit_row(alpha.ring(), std::size_t(alpha.nrows()), 0) * alpha;
        return reduce_to_e1_symplectic(v).word;
    };
}

GroupWord embed_word(const GroupWord& w, int new_size, int offset) {
    if (offset < 0 || offset % 2 != 0 || w.size + offset > new_size)
        throw dimension_mismatch("embedding offset must be even and fit");
    GroupWord out = GroupWord::empty(w.ring, new_size, w.flavor);
    out.relative_ideal = w.relative_ideal;
    for (const auto& l : w.letters) {
        if (std::holds_alternative<Generator>(l)) {
            Generator g = std::get<Generator>(l);
            if (g.kind != Generator::Kind::DiagSign) g.i += offset;
            g.j += offset;
            g.size = new_size;
            out.letters.emplace_back(std::move(g));
        } else {
            const ConjFrame& f = std::get<ConjFrame>(l);
            ConjFrame shifted{
                std::make_shared<const GroupWord>(embed_word(*f.outer, new_size, offset)),
                std::make_shared<const GroupWord>(embed_word(*f.inner, new_size, offset))};
            out.letters.emplace_back(std::move(shifted));
        }
    }
    return out;
}

PeelResult peel_iterate(const Matrix& alpha, int target_size, const RowReducer& reducer,
                        const std::optional<Ideal>& relative_ideal) {
    const int n = alpha.nrows();
    if (target_size < 2 || target_size % 2 != 0 || target_size > n)
        throw dimension_mismatch("target size must be even and at most the input size");
    const RingPtr& R = alpha.ring();
    if (!is_symplectic(alpha, standard_form(R, n / 2)))
        throw not_symplectic("peel input is not symplectic");

    GroupWord total = GroupWord::empty(R, n, Flavor::Symplectic);
    total.relative_ideal = relative_ideal;
    Matrix current = alpha;
    while (current.nrows() > target_size) {
        GroupWord eps_prime = reducer(current);
        PeelResult step = symplectic_peel(current, eps_prime, relative_ideal);
        GroupWord embedded = embed_word(step.word, n, n - current.nrows());
        for (const auto& l : embedded.letters) total.letters.push_back(l);
        current = step.gamma;
    }

    // the staged factorization must recompose exactly
    Matrix expect = Matrix::identity(R, n);
    for (int r = 0; r < current.nrows(); ++r)
        for (int c = 0; c < current.ncols(); ++c)
            expect = expect.with_entry(n - current.nrows() + r, n - current.ncols() + c,
                                       current.at(r, c));
    if (alpha * word_eval(total) != expect)
        throw internal_check_failed("iterated peel failed to recompose");
    return PeelResult{std::move(total), std::move(current)};
}

} // namespace esym
