#pragma once

#include <stdexcept>

namespace cubesum {

// Thrown when a consequence the underlying theorems guarantee fails to hold
// at runtime. If one of these escapes it is either an implementation bug or
// a genuine counterexample; it must never be silenced.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cubesum
