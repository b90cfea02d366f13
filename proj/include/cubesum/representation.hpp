#pragma once

#include <compare>
#include <stdexcept>

#include "cubesum/numeric.hpp"

namespace cubesum {

// An ordered integer pair (a, b) with a^2 + ab + b^2 = norm, validated on
// construction. Coefficients share the Eisenstein limit |coeff| <= 2^31 so
// the form value is always exact in 64 bits.
struct Representation {
    i64 a = 0;
    i64 b = 0;
    u64 norm = 0;

    Representation(i64 a_, i64 b_, u64 norm_) : a(a_), b(b_), norm(norm_) {
        if (form_value(a, b) != static_cast<i128>(norm))
            throw std::domain_error("Representation: a^2 + ab + b^2 != norm");
    }

    static Representation of(i64 a, i64 b) {
        return Representation(a, b, static_cast<u64>(form_value(a, b)));
    }

    // a^2 + ab + b^2 in 128-bit arithmetic; nonnegative for all inputs.
    static i128 form_value(i64 a, i64 b) {
        check_coeff(a);
        check_coeff(b);
        return i128(a) * a + i128(a) * b + i128(b) * b;
    }

    bool positive() const { return a > 0 && b > 0; }

    friend auto operator<=>(const Representation&, const Representation&) = default;

private:
    static void check_coeff(i64 v) {
        constexpr i64 limit = i64{1} << 31;
        if (v > limit || v < -limit)
            throw std::overflow_error("Representation: coefficient exceeds 2^31");
    }
};

}  // namespace cubesum
