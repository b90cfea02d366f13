#pragma once

#include <array>
#include <stdexcept>

#include "cubesum/errors.hpp"
#include "cubesum/numeric.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

// Element a + b*omega of Z[omega], where omega^2 = omega - 1 (omega is a
// primitive sixth root of unity). Coefficients are confined to
// |coeff| <= 2^31 so norms and products of in-range elements fit exactly in
// the 128-bit intermediates; anything that would leave the range throws
// instead of wrapping. omega^2 is normalized to -1 + omega on the spot, so
// equality of elements is plain coefficient equality.
class EisensteinInt {
public:
    static constexpr i64 kCoeffLimit = i64{1} << 31;

    constexpr EisensteinInt() = default;
    EisensteinInt(i64 re, i64 om) : re_(re), om_(om) {
        if (out_of_range(re) || out_of_range(om))
            throw std::overflow_error("EisensteinInt: coefficient exceeds 2^31");
    }

    i64 re() const { return re_; }
    i64 om() const { return om_; }

    bool is_zero() const { return re_ == 0 && om_ == 0; }

    friend bool operator==(const EisensteinInt&, const EisensteinInt&) = default;

    EisensteinInt operator-() const { return EisensteinInt(-re_, -om_); }

    // (a + b*omega)(c + d*omega) = (ac - bd) + (ad + bc + bd)*omega
    friend EisensteinInt operator*(const EisensteinInt& z, const EisensteinInt& w) {
        const i128 re = i128(z.re_) * w.re_ - i128(z.om_) * w.om_;
        const i128 om = i128(z.re_) * w.om_ + i128(z.om_) * w.re_ + i128(z.om_) * w.om_;
        return from_wide(re, om);
    }

    // Conjugate of a + b*omega is (a + b) - b*omega.
    EisensteinInt conj() const { return from_wide(i128(re_) + om_, -i128(om_)); }

    // N(a + b*omega) = a^2 + ab + b^2; zero only for the zero element.
    u64 norm() const {
        const i128 n = i128(re_) * re_ + i128(re_) * om_ + i128(om_) * om_;
        return static_cast<u64>(n);
    }

private:
    static bool out_of_range(i64 v) { return v > kCoeffLimit || v < -kCoeffLimit; }

    static EisensteinInt from_wide(i128 re, i128 om) {
        if (re > kCoeffLimit || re < -kCoeffLimit || om > kCoeffLimit || om < -kCoeffLimit)
            throw std::overflow_error("EisensteinInt: arithmetic result exceeds 2^31");
        return EisensteinInt(static_cast<i64>(re), static_cast<i64>(om));
    }

    i64 re_ = 0;
    i64 om_ = 0;
};

inline EisensteinInt pow(EisensteinInt base, unsigned exp) {
    EisensteinInt acc(1, 0);
    while (exp-- > 0) acc = acc * base;
    return acc;
}

// The six units {+-1, +-omega, +-omega^2}, with omega^2 = -1 + omega.
inline const std::array<EisensteinInt, 6>& units() {
    static const std::array<EisensteinInt, 6> k = {
        EisensteinInt(1, 0),  EisensteinInt(-1, 0), EisensteinInt(0, 1),
        EisensteinInt(0, -1), EisensteinInt(-1, 1), EisensteinInt(1, -1)};
    return k;
}

// The six associates [z, -z, omega z, -omega z, omega^2 z, -omega^2 z].
// For z = a + b*omega these come out as (a,b), (-a,-b), (-b,a+b),
// (b,-(a+b)), (-(a+b),a), (a+b,-a).
inline std::array<EisensteinInt, 6> orbit(const EisensteinInt& z) {
    if (z.is_zero()) throw std::domain_error("orbit: zero has no unit orbit");
    const EisensteinInt omega(0, 1);
    const EisensteinInt omega2(-1, 1);
    const EisensteinInt wz = omega * z;
    const EisensteinInt w2z = omega2 * z;
    return {z, -z, wz, -wz, w2z, -w2z};
}

// For z of non-square norm, the unique associate with both coordinates
// strictly positive. Square norms are rejected up front: there the orbit can
// touch the coordinate axes and no unique positive member is guaranteed.
inline Representation positive_representative(const EisensteinInt& z) {
    const u64 n = z.norm();
    if (is_perfect_square(n))
        throw std::domain_error("positive_representative: norm is a perfect square");
    const EisensteinInt* found = nullptr;
    const auto associates = orbit(z);
    for (const auto& w : associates) {
        if (w.re() > 0 && w.om() > 0) {
            if (found)
                throw invariant_violation(
                    "positive_representative: orbit has more than one positive member");
            found = &w;
        }
    }
    if (found == nullptr)
        throw invariant_violation("positive_representative: orbit has no positive member");
    return Representation(found->re(), found->om(), n);
}

}  // namespace cubesum
