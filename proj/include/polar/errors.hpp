// Error taxonomy shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace polar {

struct error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Block length is not a power of two, or vector lengths disagree.
struct invalid_length_error : error {
	using error::error;
};

// A constructed value violates its declared invariants (bad probability row,
// malformed file, out-of-range parameter).
struct validation_error : error {
	using error::error;
};

// Request would exceed a hard size cap (exact synthesis limits).
struct resource_limit_error : error {
	using error::error;
};

// Operation is defined only for a subset of inputs (e.g. symmetric channels).
struct unsupported_error : error {
	using error::error;
};

// A mathematical identity that must hold failed beyond tolerance.
struct consistency_error : error {
	using error::error;
};

} // namespace polar
