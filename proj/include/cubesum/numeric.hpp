#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace cubesum {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Exact floor(sqrt(x)) over the full 64-bit range. The floating-point
// estimate can be off by one in either direction for large x; the fixup
// loops settle it with 128-bit comparisons.
inline u64 isqrt_u64(u64 x) {
    if (x == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && static_cast<u128>(r) * r > x) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
    return r;
}

inline bool is_perfect_square(u64 x) {
    const u64 r = isqrt_u64(x);
    return r * r == x;
}

// Decimal rendering for 128-bit values (iostream cannot print them).
inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string digits;
    while (mag > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

}  // namespace cubesum
