#include "esym/forms.hpp"

#include <algorithm>

namespace esym {

Matrix SignedPermutation::to_matrix(const RingPtr& ring) const {
    const int n = int(images.size());
    std::vector<RingElement> e(std::size_t(n) * n, ring->zero());
    for (int j = 0; j < n; ++j)
        e[images[j] * std::size_t(n) + j] = signs[j] > 0 ? ring->one() : -ring->one();
    return Matrix(ring, n, n, std::move(e));
}

Matrix standard_form(const RingPtr& ring, int n) {
    if (n < 1) throw dimension_mismatch("standard form needs n >= 1");
    std::vector<RingElement> e(std::size_t(2 * n) * (2 * n), ring->zero());
    auto put = [&](int r, int c, RingElement v) { e[std::size_t(r) * 2 * n + c] = std::move(v); };
    for (int i = 0; i < n; ++i) {
        put(2 * i, 2 * i + 1, ring->one());
        put(2 * i + 1, 2 * i, -ring->one());
    }
    return Matrix(ring, 2 * n, 2 * n, std::move(e));
}

Row hat(const Row& v) {
    if (v.size() % 2 != 0) throw dimension_mismatch("hat needs an even-length row");
    // v * psi, written out directly: pairs (2i, 2i+1) map to (-v_{2i+1}, v_{2i})
    std::vector<RingElement> e;
    e.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); i += 2) {
        e.push_back(-v[i + 1]);
        e.push_back(v[i]);
    }
    return Row{v.ring, std::move(e)};
}

Matrix j_form(const RingPtr& ring, int r) {
    if (r < 0 || r > 6) throw error("J_r is only provided for 0 <= r <= 6");
    if (r == 0) return Matrix::identity(ring, 1);
    Matrix prev = j_form(ring, r - 1);
    const int h = prev.nrows();
    std::vector<RingElement> e(std::size_t(2 * h) * (2 * h), ring->zero());
    auto put = [&](int rr, int cc, RingElement v) {
        e[std::size_t(rr) * 2 * h + cc] = std::move(v);
    };
    if (r % 2 == 0) {
        // J_{r-1} ⊥ -J_{r-1}
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                put(i, j, prev.at(i, j));
                put(h + i, h + j, -prev.at(i, j));
            }
    } else {
        // J_{r-1} ⊤ -J_{r-1}: top-right block J_{r-1}, bottom-left -J_{r-1}
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                put(i, h + j, prev.at(i, j));
                put(h + i, j, -prev.at(i, j));
            }
    }
    return Matrix(ring, 2 * h, 2 * h, std::move(e));
}

namespace {

SignedPermutation sigma_from_pair_order(int r, bool reversed) {
    if (r < 1 || r > 6 || (r % 4 != 1 && r % 4 != 2))
        throw error("sigma_jr needs r = 1 or 2 mod 4 (J_r antisymmetric), r <= 6");
    auto Z = Ring::integers();
    Matrix J = j_form(Z, r);
    const int n = J.nrows();

    // each index k has a unique partner l with J[k][l] != 0; orient so +1 first
    std::vector<int> partner(n, -1);
    std::vector<bool> plus(n, false);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (!J.at(k, l).is_zero()) {
                partner[k] = l;
                plus[k] = J.at(k, l) == Z->one();
            }
    std::vector<std::pair<int, int>> pairs; // (a, b) with J[a][b] = +1
    std::vector<bool> seen(n, false);
    for (int k = 0; k < n; ++k) {
        if (seen[k]) continue;
        int l = partner[k];
        seen[k] = seen[l] = true;
        pairs.push_back(plus[k] ? std::make_pair(k, l) : std::make_pair(l, k));
    }
    // pairs are discovered in order of minimum element already
    if (reversed) std::reverse(pairs.begin(), pairs.end());

    SignedPermutation sigma;
    sigma.images.resize(n);
    sigma.signs.assign(n, 1);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        sigma.images[pairs[p].first] = 2 * p;      // slot 2p-1, 1-indexed
        sigma.images[pairs[p].second] = 2 * p + 1; // slot 2p
    }
    // the conjugation identity is exact by construction; verify anyway
    Matrix S = sigma.to_matrix(Z);
    if (!(S * J * S.transpose() == standard_form(Z, n / 2)))
        throw internal_check_failed("sigma_jr conjugation identity failed");
    return sigma;
}

} // namespace

SignedPermutation sigma_jr(int r) { return sigma_from_pair_order(r, false); }

SignedPermutation sigma_jr_alternative(int r) { return sigma_from_pair_order(r, true); }

} // namespace esym
