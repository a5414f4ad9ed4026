#pragma once

#include <json.hpp>

#include "esym/reduce.hpp"

namespace esym {

using nlohmann::json;

// Canonical encodings shared by every module and the CLI: ring descriptors as
// tagged objects, integers as decimal strings, polynomials as
// [exponent-vector, coefficient] lists (leading term first), excision
// elements as two-element arrays.

json ring_to_json(const RingPtr& ring);
RingPtr ring_from_json(const json& j);

json element_to_json(const RingElement& e);
RingElement element_from_json(const RingPtr& ring, const json& j);

json ideal_to_json(const Ideal& ideal);
Ideal ideal_from_json(const json& j);

json row_to_json(const Row& r);
Row row_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json signed_permutation_to_json(const SignedPermutation& p); // 1-based images

json word_to_json(const GroupWord& w);
GroupWord word_from_json(const json& j);

json certificate_to_json(const ReductionCertificate& c);
json certificate_to_json(const MatrixCertificate& c);
// accepts both row and matrix certificates
std::variant<ReductionCertificate, MatrixCertificate> certificate_from_json(const json& j);

// CLI ring grammar: "Z", "Z/8", "poly(Z;a0,a1,b0,b1)", "excision(Z/8;(2))",
// "excisionZ(Z;(2))"; ideal generators are integer literals
RingPtr parse_ring_spec(const std::string& spec);
Ideal parse_ideal_spec(const RingPtr& ring, const std::string& spec);

} // namespace esym
