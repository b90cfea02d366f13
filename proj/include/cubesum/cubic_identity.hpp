#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubesum/errors.hpp"
#include "cubesum/norm_forms.hpp"
#include "cubesum/numeric.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

// N(n) = n^2 + n + 1, exact in 64 bits for n <= 3*10^9.
inline u64 cubic_norm(u64 n) {
    if (n > 3'000'000'000ULL)
        throw std::overflow_error("cubic_norm: n too large for exact 64-bit n^2+n+1");
    return n * n + n + 1;
}

// An instance of the identity: summation index n and its norm target N.
// N lies strictly between n^2 and (n+1)^2, so it is never a perfect square.
struct CubicInstance {
    u64 n = 1;
    u64 N = 3;
    explicit CubicInstance(u64 n_) : n(n_), N(cubic_norm(n_)) {
        if (n_ == 0) throw std::domain_error("CubicInstance: n must be positive");
    }
};

enum class SolutionKind { TrivialXk, TrivialX2, TrivialKn1, Nontrivial };

inline const char* to_string(SolutionKind k) {
    switch (k) {
        case SolutionKind::TrivialXk: return "trivial-xk";
        case SolutionKind::TrivialX2: return "trivial-x2";
        case SolutionKind::TrivialKn1: return "trivial-kn1";
        case SolutionKind::Nontrivial: return "nontrivial";
    }
    return "?";
}

struct Solution {
    i64 k = 0;
    i64 x = 0;
    u64 n = 0;
    SolutionKind kind = SolutionKind::Nontrivial;
    friend bool operator==(const Solution&, const Solution&) = default;
};

namespace detail {

inline constexpr u64 kIdentityIndexLimit = 2'000'000'000ULL;
inline constexpr i64 kIdentityArgLimit = 2'000'000'000'000LL;

inline void check_identity_args(i64 k, i64 x, u64 n, const char* who) {
    if (n == 0) throw std::domain_error(std::string(who) + ": n must be positive");
    if (n > kIdentityIndexLimit || k > kIdentityArgLimit || k < -kIdentityArgLimit ||
        x > kIdentityArgLimit || x < -kIdentityArgLimit)
        throw std::overflow_error(std::string(who) +
                                  ": arguments exceed the exact 128-bit evaluation range");
}

}  // namespace detail

struct IdentitySides {
    i128 lhs = 0;  // sum_{j<=n} j^3 + x^3 - k^3
    i128 rhs = 0;  // (sum_{j<=n} j + x - k)^2
    bool equal() const { return lhs == rhs; }
};

// Both sides evaluated exactly with sum j = n(n+1)/2 and sum j^3 = (sum j)^2.
inline IdentitySides identity_sides(i64 k, i64 x, u64 n) {
    detail::check_identity_args(k, x, n, "identity_sides");
    const i128 s1 = i128(n) * (n + 1) / 2;
    const i128 lhs = s1 * s1 + i128(x) * x * x - i128(k) * k * k;
    const i128 t = s1 + x - k;
    return {lhs, t * t};
}

inline bool verify_identity(i64 k, i64 x, u64 n) { return identity_sides(k, x, n).equal(); }

// The reduced relation x^2 + kx + k^2 = n(n+1) + (x - k). Equivalent to the
// cubic identity on representation-derived pairs; the trivial x = k family
// satisfies the cubic identity but not this relation.
inline bool reduced_form_check(i64 k, i64 x, u64 n) {
    detail::check_identity_args(k, x, n, "reduced_form_check");
    const i128 lhs = i128(x) * x + i128(k) * x + i128(k) * k;
    const i128 rhs = i128(n) * (n + 1) + (i128(x) - k);
    return lhs == rhs;
}

inline SolutionKind classify(i64 k, i64 x, u64 n) {
    if (x == k) return SolutionKind::TrivialXk;
    if (x == 2) return SolutionKind::TrivialX2;
    if (n <= u64(detail::kIdentityArgLimit) && k == i64(n) - 1) return SolutionKind::TrivialKn1;
    return SolutionKind::Nontrivial;
}

// Change of variables k = a - 1, x = b + 1 and its inverse.
inline Solution from_representation(i64 a, i64 b, u64 n) {
    if (a < 1 || b < 1)
        throw std::domain_error("from_representation: a and b must be >= 1");
    Solution s;
    s.k = a - 1;
    s.x = b + 1;
    s.n = n;
    s.kind = classify(s.k, s.x, n);
    return s;
}

inline Representation to_representation(const Solution& s) {
    return Representation::of(s.k + 1, s.x - 1);
}

// Nontrivial means a >= 2 (k = 0 excluded), b >= 2 (b != 1), a != n, and
// a != b + 2; these mirror x != k, x != 2, k != n - 1 on the identity side.
inline bool is_nontrivial_rep(i64 a, i64 b, u64 n) {
    const u64 N = cubic_norm(n);
    if (a < 1 || b < 1 || Representation::form_value(a, b) != i128(N))
        throw std::domain_error(
            "is_nontrivial_rep: (a, b) is not a positive representation of n^2+n+1");
    return a >= 2 && b >= 2 && u64(a) != n && a != b + 2;
}

// All nontrivial solutions (k, x, n), sorted by k. Symmetric representations
// (a, b) and (b, a) yield distinct solutions and both are returned.
inline std::vector<Solution> solve(u64 n) {
    if (n == 0) throw std::domain_error("solve: n must be positive");
    if (n > 1'000'000ULL) throw std::domain_error("solve: n must be <= 10^6");
    if (n == 1) return {};
    const u64 N = cubic_norm(n);
    std::vector<Solution> out;
    for (const auto& rep : enumerate_positive(N)) {
        if (!is_nontrivial_rep(rep.a, rep.b, n)) continue;
        Solution s = from_representation(rep.a, rep.b, n);
        if (!verify_identity(s.k, s.x, n))
            throw invariant_violation("solve: candidate failed the exact identity check");
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(),
              [](const Solution& lhs, const Solution& rhs) { return lhs.k < rhs.k; });
    return out;
}

// Multiplicity criterion: a nontrivial solution exists iff N has at least
// two prime factors congruent to 1 mod 3, counting multiplicity.
inline bool has_nontrivial_by_multiplicity(u64 n) {
    if (n < 2) throw std::domain_error("has_nontrivial_by_multiplicity: n must be >= 2");
    unsigned split_multiplicity = 0;
    for (const auto& f : factor(cubic_norm(n)).factors)
        if (f.prime % 3 == 1) split_multiplicity += f.exponent;
    return split_multiplicity >= 2;
}

// Exclusion criterion: a nontrivial solution exists iff N is neither a prime
// nor three times a prime. Equivalent to the multiplicity criterion.
inline bool has_nontrivial_by_exclusion(u64 n) {
    if (n < 2) throw std::domain_error("has_nontrivial_by_exclusion: n must be >= 2");
    const u64 N = cubic_norm(n);
    if (is_prime(N)) return false;
    if (N % 3 == 0 && is_prime(N / 3)) return false;
    return true;
}

}  // namespace cubesum
