#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubesum/cubic_identity.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/factorint.hpp"
#include "cubesum/numeric.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

// Moduli for the collision construction: s | N, t | N/s, both > 1 and
// coprime to 3.
struct PigeonholeParams {
    u64 n = 0;
    u64 N = 0;
    u64 s = 0;
    u64 t = 0;
};

// Two scanned pairs with the same residue key; (c1, d1) is the later one in
// row-major order, so c1 >= c2.
struct CollisionPair {
    u64 c1 = 0, d1 = 0;
    u64 c2 = 0, d2 = 0;
};

// The residue pair a scanned (c, d) maps to: 0 <= u < s, 0 <= v < N/s.
struct ResidueKey {
    u64 u = 0;
    u64 v = 0;
    friend bool operator==(const ResidueKey&, const ResidueKey&) = default;
};

inline ResidueKey residue_key(u64 c, u64 d, u64 n, u64 s) {
    const u64 N = cubic_norm(n);
    if (s <= 1 || s >= N || N % s != 0)
        throw std::domain_error("residue_key: s must be a proper divisor of n^2+n+1");
    const u64 q = N / s;
    const u64 u = u64((u128(c) * n % s + (s - d % s)) % s);
    const u64 v = u64((u128(d) * n % q + (q - c % q)) % q);
    return {u, v};
}

namespace detail {

// Default cap on stored residue keys. Comfortable for the n <= ~10^5 range;
// larger runs must raise it explicitly or the scan refuses.
inline constexpr std::size_t kDefaultCollisionCap = std::size_t{1} << 22;

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Open-addressing map from residue key to the first (c, d) that produced it.
// Grows geometrically; refuses (rather than degrades) past the entry cap.
class CollisionTable {
public:
    explicit CollisionTable(std::size_t max_entries) : max_entries_(max_entries) {
        slots_.resize(1024);
    }

    // Returns the packed (c, d) previously stored under key, or 0 after
    // storing cd as the first occupant. cd must be nonzero.
    u64 probe_insert(u64 key, u64 cd) {
        std::size_t i = splitmix64(key) & (slots_.size() - 1);
        while (slots_[i].key_plus1 != 0) {
            if (slots_[i].key_plus1 == key + 1) return slots_[i].value;
            i = (i + 1) & (slots_.size() - 1);
        }
        if (size_ >= max_entries_)
            throw std::length_error("find_collision: residue table exceeds the configured cap");
        if ((size_ + 1) * 2 > slots_.size()) {
            grow();
            return probe_insert(key, cd);
        }
        slots_[i] = {key + 1, cd};
        ++size_;
        return 0;
    }

private:
    struct Slot {
        u64 key_plus1 = 0;
        u64 value = 0;
    };

    void grow() {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(old.size() * 2, Slot{});
        for (const Slot& s : old) {
            if (s.key_plus1 == 0) continue;
            std::size_t i = splitmix64(s.key_plus1 - 1) & (slots_.size() - 1);
            while (slots_[i].key_plus1 != 0) i = (i + 1) & (slots_.size() - 1);
            slots_[i] = s;
        }
    }

    std::vector<Slot> slots_;
    std::size_t size_ = 0;
    std::size_t max_entries_;
};

}  // namespace detail

// The polynomial identity (an - b)(bn - a) = ab(n^2+n+1) - n(a^2+ab+b^2),
// evaluated exactly on both sides. True for every input in range.
inline bool product_identity_holds(i64 a, i64 b, u64 n) {
    constexpr i64 kLimit = 2'000'000'000LL;
    if (n == 0) throw std::domain_error("product_identity_holds: n must be positive");
    if (n > u64(kLimit) || a > kLimit || a < -kLimit || b > kLimit || b < -kLimit)
        throw std::overflow_error(
            "product_identity_holds: arguments exceed the exact 128-bit evaluation range");
    const i128 N = i128(n) * n + i128(n) + 1;
    const i128 lhs = (i128(a) * i64(n) - b) * (i128(b) * i64(n) - a);
    const i128 rhs = i128(a) * b * N - i128(n) * (i128(a) * a + i128(a) * b + i128(b) * b);
    return lhs == rhs;
}

// s = smallest split prime dividing N, t = smallest split prime dividing
// N/s. Requires the exclusion criterion to hold; its failure means no nontrivial
// solution exists and there is nothing to construct.
inline PigeonholeParams choose_moduli(u64 n) {
    if (!has_nontrivial_by_exclusion(n))
        throw std::domain_error(
            "choose_moduli: n^2+n+1 is prime or three times a prime; no nontrivial "
            "solution exists");
    const u64 N = cubic_norm(n);
    const FactorMap fm = factor(N);
    u64 s = 0;
    for (const auto& f : fm.factors)
        if (f.prime % 3 == 1) {
            s = f.prime;
            break;
        }
    if (s == 0) throw invariant_violation("choose_moduli: no split prime divides N");
    u64 t = 0;
    for (const auto& f : fm.factors) {
        if (f.prime % 3 != 1) continue;
        const unsigned left = f.exponent - (f.prime == s ? 1 : 0);
        if (left > 0) {
            t = f.prime;
            break;
        }
    }
    if (t == 0) throw invariant_violation("choose_moduli: no split prime divides N/s");
    return {n, N, s, t};
}

// Scans pairs (c, d), 1 <= c, d <= n+1, in row-major order and returns the
// first two distinct pairs with equal residue key
// (cn - d mod s, dn - c mod N/s). There are (n+1)^2 = N + n > N pairs and at
// most N keys, so a collision always exists within the scan.
inline CollisionPair find_collision(u64 n, u64 s,
                                    std::size_t max_entries = detail::kDefaultCollisionCap) {
    const u64 N = cubic_norm(n);
    if (s <= 1 || s >= N || N % s != 0)
        throw std::domain_error("find_collision: s must be a proper divisor of n^2+n+1");
    const u64 q = N / s;
    detail::CollisionTable table(max_entries);
    const u64 dn_step = n % q;
    for (u64 c = 1; c <= n + 1; ++c) {
        const u64 cn_mod_s = u64(u128(c) * n % s);
        const u64 c_mod_q = c % q;
        u64 d_mod_s = 1 % s;
        u64 dn_mod_q = dn_step;  // d * n mod q, starting at d = 1
        for (u64 d = 1; d <= n + 1; ++d) {
            const u64 u = cn_mod_s >= d_mod_s ? cn_mod_s - d_mod_s : cn_mod_s + (s - d_mod_s);
            const u64 v = dn_mod_q >= c_mod_q ? dn_mod_q - c_mod_q : dn_mod_q + (q - c_mod_q);
            const u64 key = u64(u128(u) * q + v);
            const u64 prev = table.probe_insert(key, (c << 32) | d);
            if (prev != 0)
                return CollisionPair{c, d, prev >> 32, prev & 0xffffffffULL};
            if (++d_mod_s == s) d_mod_s = 0;
            dn_mod_q += dn_step;
            if (dn_mod_q >= q) dn_mod_q -= q;
        }
    }
    throw invariant_violation("find_collision: no collision within the pigeonhole range");
}

// The construction with every step of the proof checked along the way.
struct PigeonholeTrace {
    PigeonholeParams params;
    CollisionPair collision;
    Representation rep;
};

// Differences a = c' - c'', b = d' - d'' of a residue collision give a
// positive representation of N with 2 <= a, b <= n-1. Each consequence the
// proof promises is asserted; a failure would contradict the proof and
// surfaces as invariant_violation.
inline PigeonholeTrace construct_solution_trace(
    u64 n, std::optional<u64> s_override = std::nullopt,
    std::size_t max_entries = detail::kDefaultCollisionCap) {
    if (n < 2) throw std::domain_error("construct_solution: n must be >= 2");
    PigeonholeParams params;
    if (s_override.has_value()) {
        const u64 N = cubic_norm(n);
        const u64 s = *s_override;
        if (s <= 1 || s >= N || N % s != 0 || s % 3 == 0)
            throw std::domain_error(
                "construct_solution: override s must satisfy s | N, 1 < s < N, gcd(s,3) = 1");
        u64 t = 0;
        for (const auto& f : factor(N / s).factors)
            if (f.prime != 3) {
                t = f.prime;
                break;
            }
        if (t == 0)
            throw std::domain_error(
                "construct_solution: N/s has no witness divisor t > 1 coprime to 3");
        params = {n, N, s, t};
    } else {
        params = choose_moduli(n);
    }

    const CollisionPair col = find_collision(n, params.s, max_entries);
    const u64 N = params.N;
    const u64 s = params.s;
    const u64 q = N / s;
    const i64 a = i64(col.c1) - i64(col.c2);
    const i64 b = i64(col.d1) - i64(col.d2);
    auto fail = [](const char* what) {
        throw invariant_violation(std::string("construct_solution: ") + what);
    };
    if (a < 0) fail("difference a is negative");
    if (a == 0 && b == 0) fail("collision pairs are identical");
    if ((i128(a) * n - b) % i128(s) != 0) fail("s does not divide a*n - b");
    if ((i128(b) * n - a) % i128(q) != 0) fail("N/s does not divide b*n - a");
    const i128 value = i128(a) * a + i128(a) * b + i128(b) * b;
    if (value <= 0) fail("form value is not positive");
    if (value >= i128(3) * n * n) fail("form value is not below 3n^2");
    if (value == i128(2) * N) fail("form value equals 2N");
    if (value % i128(N) != 0) fail("N does not divide the form value");
    if (value != i128(N)) fail("form value differs from N");
    if (a < 2 || b < 2 || u64(a) > n - 1 || u64(b) > n - 1)
        fail("pair lies outside [2, n-1]^2");
    return {params, col, Representation(a, b, N)};
}

inline Representation construct_solution(u64 n,
                                         std::size_t max_entries = detail::kDefaultCollisionCap) {
    return construct_solution_trace(n, std::nullopt, max_entries).rep;
}

// Cubic-nontrivial solution from the constructive path. The construction does not
// exclude a = b + 2 (trivial for the identity though not for the form); in
// that case the mirrored pair (b, a) is the nontrivial one.
inline Solution constructive_solution(u64 n,
                                      std::size_t max_entries = detail::kDefaultCollisionCap) {
    const Representation rep = construct_solution(n, max_entries);
    i64 a = rep.a;
    i64 b = rep.b;
    if (a == b + 2) std::swap(a, b);
    if (!is_nontrivial_rep(a, b, n))
        throw invariant_violation("constructive_solution: constructed pair is trivial");
    return from_representation(a, b, n);
}

}  // namespace cubesum
