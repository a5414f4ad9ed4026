#pragma once

#include <stdexcept>
#include <string>

namespace esym {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ring_mismatch : error {
    using error::error;
};
struct dimension_mismatch : error {
    using error::error;
};
// Raised when ideal membership is requested for a ring/ideal combination
// outside the decidable list.
struct unsupported_membership : error {
    using error::error;
};
struct size_limit_exceeded : error {
    using error::error;
};
struct cap_exceeded : error {
    using error::error;
};
struct not_unimodular : error {
    using error::error;
};
struct search_exhausted : error {
    using error::error;
};
struct not_symplectic : error {
    using error::error;
};
struct first_row_not_e1 : error {
    using error::error;
};
struct witness_invalid : error {
    using error::error;
};
struct not_in_kernel : error {
    using error::error;
};
struct orthogonality_violated : error {
    using error::error;
};
struct det_check_failed : error {
    using error::error;
};
// A property guaranteed by the underlying algebra failed at runtime.
// Always a bug in this library, never a usage error (CLI exit code 3).
struct internal_check_failed : error {
    using error::error;
};

} // namespace esym
