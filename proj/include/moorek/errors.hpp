#pragma once

#include <stdexcept>
#include <string>

namespace moorek {

// Base class for all engine errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, out-of-range moduli, unparseable syntax.
struct input_error : error {
    using error::error;
};

// Checked integer arithmetic exceeded the machine word. Never wraps silently.
struct overflow_error : error {
    using error::error;
};

// A construction the catalog cannot back with data (e.g. Moore parameter not
// dividing the modulus, localization of a group with free part).
struct unsupported_error : error {
    using error::error;
};

// A group extension is not determined by the available data; the caller must
// supply splitting data.
struct ambiguity_error : error {
    using error::error;
};

// An invariant failed while building a derived structure; the message names
// the identity and a witness.
struct construction_error : error {
    using error::error;
};

// A bounded enumeration (subgroup closure, series expansion) exceeded its cap.
struct resource_error : error {
    using error::error;
};

} // namespace moorek
