#include "esym/ring.hpp"

#include <algorithm>
#include <sstream>

namespace esym {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw error(msg);
}

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (!a.ring() || !b.ring() || !a.ring()->equals(*b.ring()))
        throw ring_mismatch("elements belong to different rings");
}

mpz_class mod_reduce(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()); // result in [0, m)
    return r;
}

std::shared_ptr<const RingElement> box(RingElement e) {
    return std::make_shared<const RingElement>(std::move(e));
}

} // namespace

bool is_prime_modulus(const mpz_class& m) {
    return mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
}

// ---------------------------------------------------------------------------
// Ring construction
// ---------------------------------------------------------------------------

RingPtr Ring::integers() {
    static RingPtr z = [] {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->kind_ = RingKind::Integers;
        return RingPtr(r);
    }();
    return z;
}

RingPtr Ring::modular(const mpz_class& modulus) {
    require(modulus >= 2, "Modular modulus must be >= 2");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Modular;
    r->modulus_ = modulus;
    return r;
}

RingPtr Ring::poly(RingPtr base, std::vector<std::string> variables) {
    require(base != nullptr, "Poly base missing");
    require(base->kind() == RingKind::Integers || base->kind() == RingKind::Modular,
            "Poly base must be Integers or Modular (deeper nesting rejected)");
    require(!variables.empty(), "Poly needs at least one variable");
    for (std::size_t i = 0; i < variables.size(); ++i)
        for (std::size_t j = i + 1; j < variables.size(); ++j)
            require(variables[i] != variables[j], "duplicate variable name");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Poly;
    r->base_ = std::move(base);
    r->variables_ = std::move(variables);
    return r;
}

RingPtr Ring::excision(RingPtr base, Ideal ideal) {
    require(base != nullptr && ideal.ring != nullptr, "excision ring parts missing");
    require(ideal.ring->equals(*base), "Excision ideal must be an ideal of the base ring");
    require(!ideal.generators.empty(), "ideal needs at least one generator");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Excision;
    r->base_ = std::move(base);
    r->ideal_ = std::make_shared<const Ideal>(std::move(ideal));
    return r;
}

RingPtr Ring::excision_z(RingPtr host, Ideal ideal) {
    require(host != nullptr && ideal.ring != nullptr, "excision ring parts missing");
    require(ideal.ring->equals(*host), "ExcisionZ ideal must be an ideal of the host ring");
    require(!ideal.generators.empty(), "ideal needs at least one generator");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::ExcisionZ;
    r->base_ = std::move(host);
    r->ideal_ = std::make_shared<const Ideal>(std::move(ideal));
    return r;
}

bool Ring::equals(const Ring& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case RingKind::Integers: return true;
    case RingKind::Modular: return modulus_ == other.modulus_;
    case RingKind::Poly:
        return variables_ == other.variables_ && base_->equals(*other.base_);
    case RingKind::Excision:
    case RingKind::ExcisionZ:
        return base_->equals(*other.base_) && ideal_->equals(*other.ideal_);
    }
    return false;
}

bool Ideal::equals(const Ideal& other) const {
    if (!ring->equals(*other.ring)) return false;
    if (generators.size() != other.generators.size()) return false;
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (!(generators[i] == other.generators[i])) return false;
    return true;
}

bool Ring::is_finite() const {
    switch (kind_) {
    case RingKind::Modular: return true;
    case RingKind::Excision: return base_->is_finite();
    default: return false;
    }
}

bool Ring::is_integral_domain() const {
    switch (kind_) {
    case RingKind::Integers: return true;
    case RingKind::Modular: return is_prime_modulus(modulus_);
    case RingKind::Poly: return base_->is_integral_domain();
    default: return false; // excision rings have zero divisors in general
    }
}

std::string Ring::to_string() const {
    switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Modular: return "Z/" + modulus_.get_str();
    case RingKind::Poly: {
        std::string s = base_->to_string() + "[";
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (i) s += ",";
            s += variables_[i];
        }
        return s + "]";
    }
    case RingKind::Excision: return base_->to_string() + "(+)I";
    case RingKind::ExcisionZ: return "Z(+)I<" + base_->to_string() + ">";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Element factories
// ---------------------------------------------------------------------------

RingElement Ring::zero() const { return from_mpz(0); }
RingElement Ring::one() const { return from_mpz(1); }
RingElement Ring::from_int(long v) const { return from_mpz(mpz_class(v)); }

RingElement Ring::from_mpz(const mpz_class& v) const {
    auto self = shared_from_this();
    switch (kind_) {
    case RingKind::Integers:
        return RingElement(self, v);
    case RingKind::Modular:
        return RingElement(self, mod_reduce(v, modulus_));
    case RingKind::Poly: {
        Poly p;
        RingElement c = base_->from_mpz(v);
        if (!c.is_zero())
            p.terms.emplace(Monomial{std::vector<std::uint32_t>(variables_.size(), 0)},
                            c.as_int());
        return RingElement(self, std::move(p));
    }
    case RingKind::Excision:
        return RingElement(self, ExcisionPair{box(base_->from_mpz(v)), box(base_->zero())});
    case RingKind::ExcisionZ:
        return RingElement(self, ExcisionPair{box(Ring::integers()->from_mpz(v)),
                                              box(base_->zero())});
    }
    throw internal_check_failed("unreachable ring kind");
}

RingElement Ring::variable(std::size_t index) const {
    require(kind_ == RingKind::Poly, "variable() requires a Poly ring");
    require(index < variables_.size(), "variable index out of range");
    Poly p;
    std::vector<std::uint32_t> e(variables_.size(), 0);
    e[index] = 1;
    p.terms.emplace(Monomial{std::move(e)}, mpz_class(1));
    return RingElement(shared_from_this(), std::move(p));
}

RingElement Ring::constant(const RingElement& c) const {
    require(kind_ == RingKind::Poly, "constant() requires a Poly ring");
    require(c.ring()->equals(*base_), "constant must come from the base ring");
    return from_mpz(c.as_int());
}

RingElement Ring::from_poly(Poly p) const {
    require(kind_ == RingKind::Poly, "from_poly() requires a Poly ring");
    Poly out;
    for (auto& [m, c] : p.terms) {
        require(m.exp.size() == variables_.size(),
                "exponent vector length does not match the variable list");
        mpz_class cc = (base_->kind() == RingKind::Modular) ? mod_reduce(c, base_->modulus()) : c;
        if (cc != 0) out.terms.emplace(m, std::move(cc));
    }
    return RingElement(shared_from_this(), std::move(out));
}

RingElement Ring::make_pair(const RingElement& first, const RingElement& second) const {
    require(kind_ == RingKind::Excision || kind_ == RingKind::ExcisionZ,
            "make_pair() requires an excision ring");
    const RingPtr expected_first =
        (kind_ == RingKind::Excision) ? base_ : Ring::integers();
    if (!first.ring()->equals(*expected_first) || !second.ring()->equals(*base_))
        throw ring_mismatch("excision pair components in wrong rings");
    if (membership_decidable(*ideal_) && !ideal_contains(*ideal_, second))
        throw error("excision ideal part is not a member of the ideal");
    return RingElement(shared_from_this(), ExcisionPair{box(first), box(second)});
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

bool RingElement::is_zero() const {
    switch (ring_->kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return as_int() == 0;
    case RingKind::Poly:
        return as_poly().terms.empty();
    case RingKind::Excision:
    case RingKind::ExcisionZ:
        return as_pair().first->is_zero() && as_pair().second->is_zero();
    }
    return false;
}

namespace {

Poly poly_add(const Poly& a, const Poly& b, const Ring& base) {
    Poly out = a;
    for (const auto& [m, c] : b.terms) {
        auto it = out.terms.find(m);
        if (it == out.terms.end()) {
            out.terms.emplace(m, c);
        } else {
            it->second += c;
            if (base.kind() == RingKind::Modular)
                it->second = mod_reduce(it->second, base.modulus());
            if (it->second == 0) out.terms.erase(it);
        }
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, const Ring& base) {
    Poly out;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            Monomial m;
            m.exp.resize(ma.exp.size());
            for (std::size_t k = 0; k < m.exp.size(); ++k) m.exp[k] = ma.exp[k] + mb.exp[k];
            mpz_class c = ca * cb;
            auto it = out.terms.find(m);
            if (it == out.terms.end())
                out.terms.emplace(std::move(m), std::move(c));
            else
                it->second += c;
        }
    }
    // normalize once at the end
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (base.kind() == RingKind::Modular)
            it->second = mod_reduce(it->second, base.modulus());
        if (it->second == 0)
            it = out.terms.erase(it);
        else
            ++it;
    }
    return out;
}

Poly poly_neg(const Poly& a, const Ring& base) {
    Poly out;
    for (const auto& [m, c] : a.terms) {
        mpz_class n = -c;
        if (base.kind() == RingKind::Modular) n = mod_reduce(n, base.modulus());
        if (n != 0) out.terms.emplace(m, std::move(n));
    }
    return out;
}

// integer scalar times a host-ring element, via the canonical map Z -> host
RingElement int_scale(const mpz_class& n, const RingElement& x) {
    return x.ring()->from_mpz(n) * x;
}

} // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    const Ring& R = *a.ring();
    switch (R.kind()) {
    case RingKind::Integers:
        return RingElement(a.ring(), a.as_int() + b.as_int());
    case RingKind::Modular:
        return RingElement(a.ring(), mod_reduce(a.as_int() + b.as_int(), R.modulus()));
    case RingKind::Poly:
        return RingElement(a.ring(), poly_add(a.as_poly(), b.as_poly(), *R.base()));
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        // coordinatewise addition
        ExcisionPair p{box(*a.as_pair().first + *b.as_pair().first),
                       box(*a.as_pair().second + *b.as_pair().second)};
        return RingElement(a.ring(), std::move(p));
    }
    }
    throw internal_check_failed("unreachable ring kind");
}

RingElement operator-(const RingElement& a) {
    const Ring& R = *a.ring();
    switch (R.kind()) {
    case RingKind::Integers:
        return RingElement(a.ring(), -a.as_int());
    case RingKind::Modular:
        return RingElement(a.ring(), mod_reduce(-a.as_int(), R.modulus()));
    case RingKind::Poly:
        return RingElement(a.ring(), poly_neg(a.as_poly(), *R.base()));
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        ExcisionPair p{box(-*a.as_pair().first), box(-*a.as_pair().second)};
        return RingElement(a.ring(), std::move(p));
    }
    }
    throw internal_check_failed("unreachable ring kind");
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    const Ring& R = *a.ring();
    switch (R.kind()) {
    case RingKind::Integers:
        return RingElement(a.ring(), a.as_int() * b.as_int());
    case RingKind::Modular:
        return RingElement(a.ring(), mod_reduce(a.as_int() * b.as_int(), R.modulus()));
    case RingKind::Poly:
        return RingElement(a.ring(), poly_mul(a.as_poly(), b.as_poly(), *R.base()));
    case RingKind::Excision: {
        // (a,i)(b,j) = (ab, aj + ib + ij)
        const RingElement& x = *a.as_pair().first;
        const RingElement& i = *a.as_pair().second;
        const RingElement& y = *b.as_pair().first;
        const RingElement& j = *b.as_pair().second;
        ExcisionPair p{box(x * y), box(x * j + y * i + i * j)};
        return RingElement(a.ring(), std::move(p));
    }
    case RingKind::ExcisionZ: {
        // (n,i)(m,j) = (nm, nj + mi + ij), n, m integers, i, j in the host
        const mpz_class& n = a.as_pair().first->as_int();
        const RingElement& i = *a.as_pair().second;
        const mpz_class& m = b.as_pair().first->as_int();
        const RingElement& j = *b.as_pair().second;
        ExcisionPair p{box(Ring::integers()->from_mpz(n * m)),
                       box(int_scale(n, j) + int_scale(m, i) + i * j)};
        return RingElement(a.ring(), std::move(p));
    }
    }
    throw internal_check_failed("unreachable ring kind");
}

bool operator==(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    switch (a.ring()->kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return a.as_int() == b.as_int();
    case RingKind::Poly:
        return a.as_poly() == b.as_poly();
    case RingKind::Excision:
    case RingKind::ExcisionZ:
        return *a.as_pair().first == *b.as_pair().first &&
               *a.as_pair().second == *b.as_pair().second;
    }
    return false;
}

bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

RingElement pow(const RingElement& a, std::uint64_t e) {
    RingElement acc = a.ring()->one();
    RingElement base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Exact division (integral domains only)
// ---------------------------------------------------------------------------

namespace {

// leading-term division loop; correct whenever b | a in base[x1..xk]
Poly poly_exact_div(const Poly& a, const Poly& b, const Ring& base) {
    if (b.terms.empty()) throw internal_check_failed("polynomial division by zero");
    Poly rem = a;
    Poly quot;
    const auto& [lm, lc] = *b.terms.begin();
    const bool modular = base.kind() == RingKind::Modular;
    mpz_class lc_inv;
    if (modular) {
        if (mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), base.modulus().get_mpz_t()) == 0)
            throw internal_check_failed("leading coefficient not invertible");
    }
    while (!rem.terms.empty()) {
        const auto& [rm, rc] = *rem.terms.begin();
        Monomial qm;
        qm.exp.resize(rm.exp.size());
        for (std::size_t k = 0; k < rm.exp.size(); ++k) {
            if (rm.exp[k] < lm.exp[k])
                throw internal_check_failed("inexact polynomial division");
            qm.exp[k] = rm.exp[k] - lm.exp[k];
        }
        mpz_class qc;
        if (modular) {
            qc = mod_reduce(rc * lc_inv, base.modulus());
        } else {
            mpz_class r;
            mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), lc.get_mpz_t());
            if (r != 0) throw internal_check_failed("inexact polynomial division");
        }
        Poly t;
        t.terms.emplace(std::move(qm), std::move(qc));
        quot = poly_add(quot, t, base);
        Poly sub = poly_mul(t, b, base);
        rem = poly_add(rem, poly_neg(sub, base), base);
    }
    return quot;
}

} // namespace

RingElement exact_div(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    const Ring& R = *a.ring();
    if (!R.is_integral_domain())
        throw internal_check_failed("exact_div outside an integral domain");
    switch (R.kind()) {
    case RingKind::Integers: {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.as_int().get_mpz_t(),
                    b.as_int().get_mpz_t());
        if (r != 0) throw internal_check_failed("inexact integer division");
        return R.from_mpz(q);
    }
    case RingKind::Modular: {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), b.as_int().get_mpz_t(), R.modulus().get_mpz_t()) == 0)
            throw internal_check_failed("division by a non-unit residue");
        return R.from_mpz(a.as_int() * inv);
    }
    case RingKind::Poly:
        return RingElement(a.ring(), poly_exact_div(a.as_poly(), b.as_poly(), *R.base()));
    default:
        throw internal_check_failed("exact_div outside an integral domain");
    }
}

// ---------------------------------------------------------------------------
// Ideal membership
// ---------------------------------------------------------------------------

namespace {

// gcd of the generators with Bezout rows, over Z lifts
struct GcdChain {
    mpz_class g;
    std::vector<mpz_class> coeffs; // Σ coeffs[k]·gen[k] = g
};

GcdChain integer_gcd_chain(const std::vector<mpz_class>& vals) {
    GcdChain ch;
    ch.g = 0;
    ch.coeffs.assign(vals.size(), 0);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (ch.g == 0) {
            if (vals[k] != 0) {
                ch.g = abs(vals[k]);
                ch.coeffs[k] = vals[k] > 0 ? 1 : -1;
            }
            continue;
        }
        mpz_class g2, s, t;
        mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), ch.g.get_mpz_t(),
                   vals[k].get_mpz_t());
        for (auto& c : ch.coeffs) c *= s;
        ch.coeffs[k] = t;
        ch.g = g2;
    }
    return ch;
}

bool is_univariate_prime_field_poly(const Ring& R) {
    return R.kind() == RingKind::Poly && R.variables().size() == 1 &&
           R.base()->kind() == RingKind::Modular && is_prime_modulus(R.base()->modulus());
}

// true when every generator is a single variable (exponent 1, coefficient a unit not required;
// the variable-generated case in the membership list means literally x_i generators)
bool variable_generated(const Ideal& I) {
    for (const auto& g : I.generators) {
        const Poly& p = g.as_poly();
        if (p.terms.size() != 1) return false;
        const auto& [m, c] = *p.terms.begin();
        if (m.total_degree() != 1) return false;
        if (c != 1) return false;
    }
    return true;
}

// univariate polynomial gcd over a prime field, monic result
Poly univar_gcd(Poly a, Poly b, const Ring& polyring) {
    const Ring& base = *polyring.base();
    auto deg = [](const Poly& p) -> long {
        return p.terms.empty() ? -1 : static_cast<long>(p.terms.begin()->first.exp[0]);
    };
    auto make_monic = [&](Poly p) {
        if (p.terms.empty()) return p;
        mpz_class lc = p.terms.begin()->second;
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), base.modulus().get_mpz_t());
        Poly out;
        for (auto& [m, c] : p.terms) out.terms.emplace(m, mod_reduce(c * inv, base.modulus()));
        return out;
    };
    while (!b.terms.empty()) {
        // a mod b by repeated leading-term elimination
        Poly r = a;
        while (deg(r) >= deg(b)) {
            const auto& [rm, rc] = *r.terms.begin();
            const auto& [bm, bc] = *b.terms.begin();
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), bc.get_mpz_t(), base.modulus().get_mpz_t());
            Poly t;
            Monomial qm;
            qm.exp = {rm.exp[0] - bm.exp[0]};
            t.terms.emplace(qm, mod_reduce(rc * inv, base.modulus()));
            r = poly_add(r, poly_neg(poly_mul(t, b, base), base), base);
        }
        a = b;
        b = r;
    }
    return make_monic(a);
}

} // namespace

bool membership_decidable(const Ideal& ideal) {
    const Ring& R = *ideal.ring;
    switch (R.kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return true;
    case RingKind::Poly:
        if (is_univariate_prime_field_poly(R)) return true;
        return variable_generated(ideal);
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        // supported shape: all generators of the form (0, j) — the ideal 0 ⊕ J
        for (const auto& g : ideal.generators)
            if (!g.as_pair().first->is_zero()) return false;
        Ideal host_ideal{R.base(), {}};
        for (const auto& g : ideal.generators)
            host_ideal.generators.push_back(*g.as_pair().second);
        return membership_decidable(host_ideal);
    }
    }
    return false;
}

bool ideal_contains(const Ideal& ideal, const RingElement& x) {
    const Ring& R = *ideal.ring;
    if (!x.ring()->equals(R)) throw ring_mismatch("element not in the ideal's ring");
    switch (R.kind()) {
    case RingKind::Integers: {
        std::vector<mpz_class> vals;
        for (const auto& g : ideal.generators) vals.push_back(g.as_int());
        GcdChain ch = integer_gcd_chain(vals);
        if (ch.g == 0) return x.as_int() == 0;
        return mpz_divisible_p(x.as_int().get_mpz_t(), ch.g.get_mpz_t()) != 0;
    }
    case RingKind::Modular: {
        // the ideal of Z/m generated by g's is (gcd(g's, m))
        std::vector<mpz_class> vals;
        for (const auto& g : ideal.generators) vals.push_back(g.as_int());
        vals.push_back(R.modulus());
        GcdChain ch = integer_gcd_chain(vals);
        return mpz_divisible_p(x.as_int().get_mpz_t(), ch.g.get_mpz_t()) != 0;
    }
    case RingKind::Poly: {
        if (is_univariate_prime_field_poly(R)) {
            Poly g;
            for (const auto& gen : ideal.generators) g = univar_gcd(g, gen.as_poly(), R);
            if (g.terms.empty()) return x.is_zero();
            // divisibility test by leading-term elimination
            Poly r = x.as_poly();
            const Ring& base = *R.base();
            while (!r.terms.empty() &&
                   r.terms.begin()->first.exp[0] >= g.terms.begin()->first.exp[0]) {
                const auto& [rm, rc] = *r.terms.begin();
                const auto& [gm, gc] = *g.terms.begin();
                mpz_class inv;
                mpz_invert(inv.get_mpz_t(), gc.get_mpz_t(), base.modulus().get_mpz_t());
                Poly t;
                Monomial qm;
                qm.exp = {rm.exp[0] - gm.exp[0]};
                t.terms.emplace(qm, mod_reduce(rc * inv, base.modulus()));
                r = poly_add(r, poly_neg(poly_mul(t, g, base), base), base);
            }
            return r.terms.empty();
        }
        if (variable_generated(ideal)) {
            // member iff every monomial is divisible by some generator variable
            std::vector<std::size_t> var_idx;
            for (const auto& g : ideal.generators) {
                const Monomial& m = g.as_poly().terms.begin()->first;
                for (std::size_t k = 0; k < m.exp.size(); ++k)
                    if (m.exp[k] == 1) var_idx.push_back(k);
            }
            for (const auto& [m, c] : x.as_poly().terms) {
                bool divisible = false;
                for (auto k : var_idx)
                    if (m.exp[k] > 0) { divisible = true; break; }
                if (!divisible) return false;
            }
            return true;
        }
        throw unsupported_membership("no decision procedure for this polynomial ideal");
    }
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        for (const auto& g : ideal.generators)
            if (!g.as_pair().first->is_zero())
                throw unsupported_membership(
                    "excision ideal membership supported only for ideals of shape 0+J");
        Ideal host_ideal{R.base(), {}};
        for (const auto& g : ideal.generators)
            host_ideal.generators.push_back(*g.as_pair().second);
        return x.as_pair().first->is_zero() && ideal_contains(host_ideal, *x.as_pair().second);
    }
    }
    throw unsupported_membership("unsupported ring kind for membership");
}

std::optional<std::vector<RingElement>> ideal_witness(const Ideal& ideal,
                                                      const RingElement& x) {
    const Ring& R = *ideal.ring;
    if (!x.ring()->equals(R)) throw ring_mismatch("element not in the ideal's ring");
    if (R.kind() == RingKind::Integers) {
        std::vector<mpz_class> vals;
        for (const auto& g : ideal.generators) vals.push_back(g.as_int());
        GcdChain ch = integer_gcd_chain(vals);
        if (ch.g == 0) {
            if (x.as_int() != 0) return std::nullopt;
            return std::vector<RingElement>(ideal.generators.size(), R.zero());
        }
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.as_int().get_mpz_t(), ch.g.get_mpz_t());
        if (r != 0) return std::nullopt;
        std::vector<RingElement> out;
        for (const auto& c : ch.coeffs) out.push_back(R.from_mpz(c * q));
        return out;
    }
    if (R.kind() == RingKind::Modular) {
        std::vector<mpz_class> vals;
        for (const auto& g : ideal.generators) vals.push_back(g.as_int());
        vals.push_back(R.modulus());
        GcdChain ch = integer_gcd_chain(vals);
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.as_int().get_mpz_t(), ch.g.get_mpz_t());
        if (r != 0) return std::nullopt;
        std::vector<RingElement> out;
        for (std::size_t k = 0; k + 1 < ch.coeffs.size(); ++k)
            out.push_back(R.from_mpz(ch.coeffs[k] * q)); // the modulus column is dropped
        return out;
    }
    return std::nullopt; // only the Euclidean integer cases provide witnesses
}

// ---------------------------------------------------------------------------
// Excision homomorphisms
// ---------------------------------------------------------------------------

RingElement hom_f(const RingElement& x) {
    if (x.ring()->kind() != RingKind::ExcisionZ)
        throw ring_mismatch("hom_f expects an element of Z(+)I");
    const RingPtr& host = x.ring()->base();
    return host->from_mpz(x.as_pair().first->as_int()) + *x.as_pair().second;
}

RingElement hom_g(const RingElement& x) {
    if (x.ring()->kind() != RingKind::Excision)
        throw ring_mismatch("hom_g expects an element of R(+)I");
    return *x.as_pair().first + *x.as_pair().second;
}

RingElement section_g(const RingPtr& excision_ring, const RingElement& x) {
    if (excision_ring->kind() != RingKind::Excision)
        throw ring_mismatch("section_g targets an R(+)I ring");
    return excision_ring->make_pair(x, x.ring()->zero());
}

// ---------------------------------------------------------------------------
// Printing and random elements
// ---------------------------------------------------------------------------

std::string RingElement::to_string() const {
    switch (ring_->kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return as_int().get_str();
    case RingKind::Poly: {
        const Poly& p = as_poly();
        if (p.terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : p.terms) {
            mpz_class ac = abs(c);
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool printed_coeff = false;
            if (ac != 1 || m.total_degree() == 0) {
                os << ac.get_str();
                printed_coeff = true;
            }
            for (std::size_t k = 0; k < m.exp.size(); ++k) {
                if (m.exp[k] == 0) continue;
                if (printed_coeff) os << "*";
                os << ring_->variables()[k];
                if (m.exp[k] > 1) os << "^" << m.exp[k];
                printed_coeff = true;
            }
        }
        return os.str();
    }
    case RingKind::Excision:
    case RingKind::ExcisionZ:
        return "(" + as_pair().first->to_string() + ", " + as_pair().second->to_string() + ")";
    }
    return "?";
}

RingElement Ring::random_element(Rng& rng) const {
    switch (kind_) {
    case RingKind::Integers:
        return from_int(rng.int_in(-50, 50));
    case RingKind::Modular:
        return from_mpz(mpz_class(static_cast<unsigned long>(rng.u64())));
    case RingKind::Poly: {
        Poly p;
        std::size_t nterms = rng.below(4) + 1;
        for (std::size_t t = 0; t < nterms; ++t) {
            Monomial m;
            m.exp.resize(variables_.size());
            for (auto& e : m.exp) e = static_cast<std::uint32_t>(rng.below(3));
            mpz_class c(static_cast<long>(rng.int_in(-9, 9)));
            auto it = p.terms.find(m);
            if (it == p.terms.end())
                p.terms.emplace(std::move(m), std::move(c));
            else
                it->second += c;
        }
        return from_poly(std::move(p));
    }
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        RingElement first = (kind_ == RingKind::Excision)
                                ? base_->random_element(rng)
                                : Ring::integers()->random_element(rng);
        // random ideal member: a random combination of the generators
        RingElement second = base_->zero();
        for (const auto& g : ideal_->generators)
            second = second + base_->random_element(rng) * g;
        return make_pair(first, second);
    }
    }
    throw internal_check_failed("unreachable ring kind");
}

} // namespace esym
