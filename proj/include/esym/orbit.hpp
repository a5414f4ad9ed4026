#pragma once

#include <cstdint>
#include <map>

#include "esym/words.hpp"

namespace esym {

// Lookup-table arithmetic for a finite ring (Modular, or Excision over a
// Modular base). Elements are indexed canonically so rows pack into dense
// state indices; this is what makes exhaustive orbit enumeration cheap.
class FiniteRing {
public:
    explicit FiniteRing(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    std::size_t size() const { return elems_.size(); }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_[idx(a, b)]; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_[idx(a, b)]; }
    std::uint16_t neg(std::uint16_t a) const { return neg_[a]; }
    std::uint16_t zero_index() const { return zero_; }
    std::uint16_t one_index() const { return one_; }

    std::uint16_t index_of(const RingElement& e) const;
    const RingElement& element(std::uint16_t i) const { return elems_[i]; }

    // indices of the elements lying in the ideal
    std::vector<std::uint16_t> ideal_members(const Ideal& ideal) const;

private:
    std::size_t idx(std::uint16_t a, std::uint16_t b) const { return std::size_t(a) * size() + b; }

    RingPtr ring_;
    std::vector<RingElement> elems_;
    std::vector<std::uint16_t> add_, mul_, neg_;
    std::uint16_t zero_ = 0, one_ = 0;
};

// a generator in table-index form, with an optional letter for path words
struct TableGen {
    std::vector<std::uint16_t> mat; // size x size, row-major indices
    std::optional<Letter> letter;
};

// All E_ij(z) (resp. se_ij(z)) with z ranging over the nonzero ring elements,
// or over the nonzero ideal members when param_ideal is given. The set is
// closed under inverses since E_ij(z)^-1 = E_ij(-z).
std::vector<TableGen> canonical_generators(const FiniteRing& fr, int size, Flavor flavor,
                                           const std::optional<Ideal>& param_ideal);

// Dense row space (ring elements)^len with BFS utilities.
class OrbitSpace {
public:
    OrbitSpace(RingPtr ring, int len, std::uint64_t cap = (std::uint64_t(1) << 26));

    const FiniteRing& table() const { return fr_; }
    int len() const { return len_; }
    std::uint64_t num_states() const { return states_; }

    std::uint64_t encode(const Row& v) const;
    Row decode(std::uint64_t s) const;

    std::vector<std::uint16_t> to_indices(const Row& v) const;
    std::uint64_t encode_indices(const std::vector<std::uint16_t>& v) const;
    std::vector<std::uint16_t> decode_indices(std::uint64_t s) const;

    // index-form right action v * M
    std::vector<std::uint16_t> apply(const std::vector<std::uint16_t>& v,
                                     const std::vector<std::uint16_t>& m) const;
    std::vector<std::uint16_t> matrix_indices(const Matrix& m) const;
    std::vector<std::uint16_t> mat_mul(const std::vector<std::uint16_t>& a,
                                       const std::vector<std::uint16_t>& b) const;

    // closure of the start states under right multiplication; sorted, deterministic
    std::vector<std::uint64_t> closure(std::vector<std::uint64_t> starts,
                                       const std::vector<TableGen>& gens) const;

private:
    FiniteRing fr_;
    int len_;
    std::uint64_t states_;
};

// BFS tree from one start row; recovers a word for every reached row. All
// generators must carry letters.
class PathTable {
public:
    PathTable(const OrbitSpace& space, std::uint64_t start, const std::vector<TableGen>& gens,
              Flavor flavor, RingPtr ring);

    bool reached(std::uint64_t s) const { return s == start_ || parent_gen_[s] >= 0; }
    std::vector<std::uint64_t> reached_sorted() const;
    // word w with start * eval(w) = target
    GroupWord word_to(std::uint64_t target) const;

private:
    const OrbitSpace& space_;
    std::uint64_t start_;
    std::vector<TableGen> gens_;
    Flavor flavor_;
    RingPtr ring_;
    std::vector<std::int32_t> parent_gen_;
    std::vector<std::uint64_t> parent_state_;
};

// spec-level operation: closure of {v} under the given generator matrices,
// inverses added automatically (finite order powers when needed)
std::vector<Row> orbit_bfs(const Row& v, const std::vector<Matrix>& gens,
                           std::uint64_t cap = (std::uint64_t(1) << 26));
std::vector<Row> orbit_bfs(const UnimodularRow& v, const std::vector<Matrix>& gens,
                           std::uint64_t cap = (std::uint64_t(1) << 26));

struct RelativeOrbitReport {
    std::vector<std::uint64_t> lower; // sorted encodings
    std::vector<std::uint64_t> upper;
    bool certified = false;
    bool stabilized = false; // the L/L+1 stabilization rule fired
    int depth = 0;           // conjugator word length reached
};

// Lower set: BFS closure of {v} under conjugated generators w g w^-1 with g an
// ideal-parameter generator and w a word of length <= L in the absolute
// generators, L grown until the closure stabilizes or matches the upper set.
// Upper set: (absolute orbit of v) ∩ {rows congruent to v mod the ideal}.
// certified = (lower == upper); when certified the relative orbit is exact.
RelativeOrbitReport relative_orbit_certify(const OrbitSpace& space, const Row& v,
                                           const Ideal& ideal, Flavor flavor,
                                           int max_depth = 4,
                                           std::uint64_t conj_cap = 2'000'000);

// Relative BFS with path recovery: every edge is a conjugated ideal generator,
// so recovered words are valid relative certificates. Depth grows until the
// target is reached or the closure stabilizes.
class RelativePathTable {
public:
    RelativePathTable(const OrbitSpace& space, std::uint64_t start, const Ideal& ideal,
                      Flavor flavor, int max_depth = 4,
                      std::uint64_t conj_cap = 2'000'000);

    bool reached(std::uint64_t s) const;
    GroupWord word_to(std::uint64_t target) const; // relative word

private:
    const OrbitSpace& space_;
    std::uint64_t start_;
    Ideal ideal_;
    Flavor flavor_;
    std::vector<TableGen> conj_gens_;
    std::vector<std::int32_t> parent_gen_;
    std::vector<std::uint64_t> parent_state_;
};

} // namespace esym
