#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cubesum/eisenstein.hpp"
#include "cubesum/factorint.hpp"
#include "cubesum/numeric.hpp"
#include "cubesum/representation.hpp"

namespace cubesum {

namespace detail {

inline constexpr u64 kFormLimit = u64{1} << 62;
inline constexpr u64 kEnumerateAllLimit = 1'000'000'000ULL;
inline constexpr u64 kEnumeratePositiveLimit = 2'000'000'000'000ULL;

inline void check_form_range(u64 n, const char* who) {
    if (n == 0 || n >= kFormLimit)
        throw std::domain_error(std::string(who) + ": input must be in [1, 2^62)");
}

}  // namespace detail

// N is a norm a^2 + ab + b^2 iff every inert prime (2 mod 3) divides N to an
// even power.
inline bool is_representable(u64 N) {
    detail::check_form_range(N, "is_representable");
    for (const auto& f : factor(N).factors)
        if (f.prime % 3 == 2 && f.exponent % 2 != 0) return false;
    return true;
}

// Number of ordered integer pairs with a^2 + ab + b^2 = N:
// 6 * prod (n_i + 1) over split primes p_i^{n_i} || N, zero if not
// representable. The exponent of 3 and even inert exponents contribute
// nothing.
inline u64 count_all_representations(u64 N) {
    detail::check_form_range(N, "count_all_representations");
    u64 m = 1;
    for (const auto& f : factor(N).factors) {
        if (f.prime % 3 == 1)
            m *= f.exponent + 1;
        else if (f.prime % 3 == 2 && f.exponent % 2 != 0)
            return 0;
    }
    return 6 * m;
}

// Every integer pair (a, b) with a^2 + ab + b^2 = N, found by scanning the
// exact coefficient range 3a^2 <= 4N and solving the quadratic in b.
// Sorted by (a, b); kept at oracle scale.
inline std::vector<Representation> enumerate_all(u64 N) {
    if (N == 0 || N > detail::kEnumerateAllLimit)
        throw std::domain_error("enumerate_all: N must be in [1, 10^9]");
    i64 amax = i64(isqrt_u64(4 * N / 3));
    while (u128(3) * (amax + 1) * (amax + 1) <= u128(4) * N) ++amax;
    while (u128(3) * amax * amax > u128(4) * N) --amax;
    std::vector<Representation> out;
    for (i64 a = -amax; a <= amax; ++a) {
        const u64 disc = 4 * N - u64(3 * a * a);
        const u64 d = isqrt_u64(disc);
        if (d * d != disc) continue;
        const i64 di = i64(d);
        if (((di - a) & 1) != 0) continue;  // -a + d and -a - d share parity
        out.emplace_back(a, (-a + di) / 2, N);
        if (di != 0) out.emplace_back(a, (-a - di) / 2, N);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Positive pairs (a, b > 0) with a^2 + ab + b^2 = N, sorted by a.
inline std::vector<Representation> enumerate_positive(u64 N) {
    if (N == 0 || N > detail::kEnumeratePositiveLimit)
        throw std::domain_error("enumerate_positive: N must be in [1, 2*10^12]");
    std::vector<Representation> out;
    const u64 alimit = isqrt_u64(N);
    for (u64 a = 1; a <= alimit; ++a) {
        const u64 disc = 4 * N - 3 * a * a;
        const u64 d = isqrt_u64(disc);
        if (d * d != disc) continue;
        if (d <= a || ((d - a) & 1) != 0) continue;  // b = (d - a)/2 must be > 0
        out.emplace_back(i64(a), i64((d - a) / 2), N);
    }
    return out;
}

// Positive-representation count prod (n_i + 1) straight from the
// factorization, without enumeration. Zero when N is not representable.
// Perfect squares are rejected: the one-positive-per-orbit argument needs a
// non-square norm.
inline u64 count_positive(u64 N) {
    detail::check_form_range(N, "count_positive");
    if (is_perfect_square(N))
        throw std::domain_error("count_positive: N must not be a perfect square");
    u64 m = 1;
    for (const auto& f : factor(N).factors) {
        if (f.prime % 3 == 1)
            m *= f.exponent + 1;
        else if (f.prime % 3 == 2 && f.exponent % 2 != 0)
            return 0;
    }
    return m;
}

// Rebuilds every representation of N constructively from the Eisenstein
// factorization: z = u * (1+omega)^j * prod rho_i^{a_i} conj(rho_i)^{n_i-a_i}
// * prod q_i^{m_i/2}, with u over the six units and a_i in [0, n_i].
// The result equals enumerate_all(N) as a set.
inline std::vector<Representation> generate_from_factorization(u64 N) {
    detail::check_form_range(N, "generate_from_factorization");
    const FactorMap fm = factor(N);
    EisensteinInt base(1, 0);
    struct SplitPart {
        EisensteinInt rho, rho_bar;
        unsigned exponent;
    };
    std::vector<SplitPart> split_parts;
    for (const auto& f : fm.factors) {
        if (f.prime == 3) {
            base = base * pow(ramified_prime(), f.exponent);
        } else if (f.prime % 3 == 1) {
            const EisensteinInt rho = split_prime(f.prime);
            split_parts.push_back({rho, rho.conj(), f.exponent});
        } else {
            if (f.exponent % 2 != 0)
                throw std::domain_error(
                    "generate_from_factorization: N is not representable "
                    "(odd inert exponent)");
            u64 q = 1;
            for (unsigned e = 0; e < f.exponent / 2; ++e) q *= f.prime;
            base = base * EisensteinInt(i64(q), 0);
        }
    }
    std::vector<EisensteinInt> elements{base};
    for (const auto& part : split_parts) {
        std::vector<EisensteinInt> next;
        next.reserve(elements.size() * (part.exponent + 1));
        for (unsigned e = 0; e <= part.exponent; ++e) {
            const EisensteinInt piece = pow(part.rho, e) * pow(part.rho_bar, part.exponent - e);
            for (const auto& el : elements) next.push_back(el * piece);
        }
        elements = std::move(next);
    }
    std::vector<Representation> out;
    out.reserve(elements.size() * 6);
    for (const auto& el : elements)
        for (const auto& u : units()) {
            const EisensteinInt z = el * u;
            out.emplace_back(z.re(), z.om(), N);  // norm re-checked on construction
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cubesum
