#include "esym/suslin.hpp"

namespace esym {

Matrix suslin_matrix(const Row& v, const Row& w, int r) {
    if (r < 0 || r > 6) throw error("Suslin matrices are provided for 0 <= r <= 6");
    if (int(v.size()) != r + 1 || int(w.size()) != r + 1)
        throw dimension_mismatch("Suslin rows must have length r+1");
    if (!v.ring->equals(*w.ring)) throw ring_mismatch("rows over different rings");
    if (r == 0) return Matrix(v.ring, 1, 1, {v[0]});

    Row v1{v.ring, {v.entries.begin() + 1, v.entries.end()}};
    Row w1{w.ring, {w.entries.begin() + 1, w.entries.end()}};
    Matrix tr = suslin_matrix(v1, w1, r - 1);
    Matrix bl = -suslin_matrix(w1, v1, r - 1).transpose();
    const int h = tr.nrows();
    std::vector<RingElement> e(std::size_t(2 * h) * (2 * h), v.ring->zero());
    auto put = [&](int rr, int cc, const RingElement& x) {
        e[std::size_t(rr) * 2 * h + cc] = x;
    };
    for (int i = 0; i < h; ++i) {
        put(i, i, v[0]);
        put(h + i, h + i, w[0]);
        for (int j = 0; j < h; ++j) {
            put(i, h + j, tr.at(i, j));
            put(h + i, j, bl.at(i, j));
        }
    }
    return Matrix(v.ring, 2 * h, 2 * h, std::move(e));
}

SuslinSymbols suslin_symbols(int r) {
    std::vector<std::string> vars;
    for (int k = 0; k <= r; ++k) vars.push_back("a" + std::to_string(k));
    for (int k = 0; k <= r; ++k) vars.push_back("b" + std::to_string(k));
    RingPtr P = Ring::poly(Ring::integers(), vars);
    std::vector<RingElement> ve, we;
    for (int k = 0; k <= r; ++k) ve.push_back(P->variable(k));
    for (int k = 0; k <= r; ++k) we.push_back(P->variable(r + 1 + k));
    return SuslinSymbols{P, Row{P, std::move(ve)}, Row{P, std::move(we)}};
}

bool verify_product_identity(int r) {
    if (r < 1 || r > 5) throw error("symbolic product identity is checked for 1 <= r <= 5");
    auto sym = suslin_symbols(r);
    Matrix S = suslin_matrix(sym.v, sym.w, r);
    Matrix T = suslin_matrix(sym.w, sym.v, r).transpose();
    Matrix expect = scale(inner_product(sym.v, sym.w), Matrix::identity(sym.ring, S.nrows()));
    return S * T == expect && T * S == expect;
}

namespace {

bool suslin_identity_case(const Matrix& S, const Matrix& J, const RingElement& ip, int r) {
    switch (r % 4) {
    case 0: return (S * J).transpose() == S * J;
    case 1: return S * J * S.transpose() == scale(ip, J);
    case 2: return (S * J).transpose() == -(S * J);
    default: return S * J * S.transpose() == scale(ip, J);
    }
}

} // namespace

bool verify_suslin_identity(int r) {
    if (r < 1 || r > 6) throw error("Suslin identities are checked for 1 <= r <= 6");
    auto sym = suslin_symbols(r);
    Matrix S = suslin_matrix(sym.v, sym.w, r);
    Matrix J = j_form(sym.ring, r);
    return suslin_identity_case(S, J, inner_product(sym.v, sym.w), r);
}

bool check_suslin_identity_numeric(const Row& v, const Row& w, int r) {
    Matrix S = suslin_matrix(v, w, r);
    Matrix J = j_form(v.ring, r);
    return suslin_identity_case(S, J, inner_product(v, w), r);
}

bool verify_det_formula(int r) {
    if (r < 1 || r > 3) throw error("symbolic determinant formula is checked for 1 <= r <= 3");
    auto sym = suslin_symbols(r);
    Matrix S = suslin_matrix(sym.v, sym.w, r);
    RingElement ip = inner_product(sym.v, sym.w);
    return det(S) == pow(ip, std::uint64_t(1) << (r - 1));
}

Row factorial_row(const Row& v) {
    std::vector<RingElement> e;
    e.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        e.push_back(k <= 1 ? v[k] : pow(v[k], k));
    return Row{v.ring, std::move(e)};
}

bool conjugated_symplectic_check(const Row& v, const Row& w, int r,
                                 const SignedPermutation& sigma) {
    if (r % 4 != 1) throw error("conjugated symplecticity applies to r = 1 mod 4");
    if (inner_product(v, w) != v.ring->one())
        throw witness_invalid("witness pair must have inner product 1");
    Matrix S = suslin_matrix(v, w, r);
    Matrix P = sigma.to_matrix(v.ring);
    // sigma is a permutation, so its transpose is its inverse
    Matrix M = P * S * P.transpose();
    return is_symplectic(M, standard_form(v.ring, S.nrows() / 2));
}

std::pair<Row, Row> random_unimodular_pair(int len, Rng& rng) {
    auto Z = Ring::integers();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<mpz_class> vals;
        for (int k = 0; k < len; ++k) vals.emplace_back(static_cast<long>(rng.int_in(-9, 9)));
        // running extended gcd to build Bezout coefficients
        mpz_class g = 0;
        std::vector<mpz_class> coeff(len, 0);
        for (int k = 0; k < len; ++k) {
            if (g == 0) {
                if (vals[k] != 0) {
                    g = abs(vals[k]);
                    coeff[k] = vals[k] > 0 ? 1 : -1;
                }
                continue;
            }
            mpz_class g2, s, t;
            mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                       vals[k].get_mpz_t());
            for (auto& c : coeff) c *= s;
            coeff[k] = t;
            g = g2;
        }
        if (g != 1) continue;
        std::vector<RingElement> ve, we;
        for (int k = 0; k < len; ++k) ve.push_back(Z->from_mpz(vals[k]));
        for (int k = 0; k < len; ++k) we.push_back(Z->from_mpz(coeff[k]));
        Row v{Z, std::move(ve)}, w{Z, std::move(we)};
        // add random kernel shifts w += c (v_j e_i - v_i e_j) for variety
        for (int t = 0; t < 4; ++t) {
            int i = int(rng.below(len)), j = int(rng.below(len));
            if (i == j) continue;
            RingElement c = Z->from_int(rng.int_in(-3, 3));
            w[i] = w[i] + c * v[j];
            w[j] = w[j] - c * v[i];
        }
        if (inner_product(v, w) != Z->one())
            throw internal_check_failed("kernel shift changed the inner product");
        return {v, w};
    }
    throw search_exhausted("no unimodular integer row found");
}

} // namespace esym
