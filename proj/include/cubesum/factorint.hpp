#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubesum/eisenstein.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/numeric.hpp"

namespace cubesum {

enum class PrimeClass { Ramified, Split, Inert };

struct PrimeFactor {
    u64 prime = 0;
    unsigned exponent = 0;
    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

// Complete prime factorization, primes strictly increasing. Empty for 1.
struct FactorMap {
    std::vector<PrimeFactor> factors;

    u64 value() const {
        u64 v = 1;
        for (const auto& f : factors)
            for (unsigned e = 0; e < f.exponent; ++e) v *= f.prime;
        return v;
    }

    unsigned exponent_of(u64 p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }
};

namespace detail {

inline constexpr u64 kIntegerLimit = u64{1} << 63;

// Montgomery arithmetic modulo an odd n < 2^63: a product costs three
// 64x64 multiplies and no division.
class Montgomery64 {
public:
    explicit Montgomery64(u64 mod) : mod_(mod) {
        u64 inv = mod;  // Newton lifting: inv = mod^{-1} (mod 2^64)
        for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
        neg_inv_ = ~inv + 1;
        one_ = (~u64{0} % mod) + 1;  // 2^64 mod mod, the Montgomery form of 1
        r2_ = static_cast<u64>(u128(one_) * one_ % mod);
    }

    u64 one() const { return one_; }
    u64 to(u64 x) const { return mul(x, r2_); }  // x must be < mod
    u64 from(u64 x) const { return reduce(x); }
    u64 mul(u64 a, u64 b) const { return reduce(u128(a) * b); }
    u64 add(u64 a, u64 b) const {
        const u64 s = a + b;
        return s >= mod_ ? s - mod_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (mod_ - b); }
    u64 pow(u64 base, u64 e) const {
        u64 acc = one_;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    u64 reduce(u128 t) const {
        const u64 m = static_cast<u64>(t) * neg_inv_;
        const u64 r = static_cast<u64>((t + u128(m) * mod_) >> 64);
        return r >= mod_ ? r - mod_ : r;
    }

    u64 mod_, neg_inv_, one_, r2_;
};

// Deterministic Miller-Rabin for odd n >= 5. The seven-base witness set is
// complete for every 64-bit input.
inline bool miller_rabin(u64 n) {
    static constexpr u64 kWitnesses[] = {2,      325,     9375,      28178,
                                         450775, 9780504, 1795265022};
    const Montgomery64 mg(n);
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const u64 one = mg.one();
    const u64 minus_one = mg.to(n - 1);
    for (u64 a : kWitnesses) {
        const u64 ar = a % n;
        if (ar == 0) continue;
        u64 x = mg.pow(mg.to(ar), d);
        if (x == one || x == minus_one) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mg.mul(x, x);
            if (x == minus_one) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Brent-cycle Pollard rho with batched gcds, for odd composite n with no
// prime factor below 1000. Deterministic: fixed start, polynomial constants
// tried in order.
inline u64 pollard_brent(u64 n) {
    const Montgomery64 mg(n);
    for (u64 c = 1;; ++c) {
        const u64 c_m = mg.to(c % n);
        auto step = [&](u64 v) { return mg.add(mg.mul(v, v), c_m); };
        u64 y = mg.to(2), q = mg.one(), g = 1, x = 0, ys = 0;
        constexpr u64 kBatch = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                const u64 lim = std::min(kBatch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    // gcd on Montgomery residues is valid: R is coprime to n
                    q = mg.mul(q, mg.sub(x, y));
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // overshot inside a batch; replay one step at a time
            g = 1;
            while (g == 1) {
                ys = step(ys);
                g = std::gcd(mg.sub(x, ys), n);
            }
        }
        if (g != n) return g;
    }
}

inline const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> ps;
        std::vector<bool> sieve(1000, true);
        for (u64 i = 2; i < 1000; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (u64 j = i * i; j < 1000; j += i) sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

}  // namespace detail

// Deterministic primality for 1 <= n < 2^63.
inline bool is_prime(u64 n) {
    if (n == 0 || n >= detail::kIntegerLimit)
        throw std::domain_error("is_prime: input must be in [1, 2^63)");
    if (n < 4) return n >= 2;
    if ((n & 1) == 0) return false;
    return detail::miller_rabin(n);
}

inline FactorMap factor(u64 n) {
    if (n == 0 || n >= detail::kIntegerLimit)
        throw std::domain_error("factor: input must be in [1, 2^63)");
    std::vector<u64> primes;
    for (u64 p : detail::small_primes()) {
        if (p * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        std::vector<u64> pending{n};
        while (!pending.empty()) {
            const u64 m = pending.back();
            pending.pop_back();
            // no factor below 1000 survives here, so m < 10^6 is prime
            if (m < 1'000'000 || detail::miller_rabin(m)) {
                primes.push_back(m);
                continue;
            }
            const u64 d = detail::pollard_brent(m);
            pending.push_back(d);
            pending.push_back(m / d);
        }
    }
    std::sort(primes.begin(), primes.end());
    FactorMap fm;
    for (u64 p : primes) {
        if (!fm.factors.empty() && fm.factors.back().prime == p)
            ++fm.factors.back().exponent;
        else
            fm.factors.push_back({p, 1});
    }
    return fm;
}

// Ramified iff p = 3, Split iff p = 1 (mod 3), Inert iff p = 2 (mod 3).
inline PrimeClass classify_prime(u64 p) {
    if (!is_prime(p)) throw std::domain_error("classify_prime: input is not prime");
    if (p == 3) return PrimeClass::Ramified;
    return p % 3 == 1 ? PrimeClass::Split : PrimeClass::Inert;
}

// 1 + omega, the prime of norm 3 over the ramified rational prime.
inline EisensteinInt ramified_prime() { return EisensteinInt(1, 1); }

namespace detail {

// Square root modulo an odd prime p (Tonelli-Shanks); returns r with
// r^2 = a (mod p) when a is a quadratic residue, otherwise garbage the
// caller must reject by squaring.
inline u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    const Montgomery64 mg(p);
    const u64 am = mg.to(a);
    if (p % 4 == 3) return mg.from(mg.pow(am, (p + 1) / 4));
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;  // smallest quadratic non-residue
    while (mg.pow(mg.to(z), (p - 1) / 2) == mg.one()) ++z;
    u64 c = mg.pow(mg.to(z), q);
    u64 x = mg.pow(am, (q + 1) / 2);
    u64 t = mg.pow(am, q);
    int m = s;
    while (t != mg.one()) {
        u64 tt = t;
        int i = 0;
        while (tt != mg.one()) {
            tt = mg.mul(tt, tt);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mg.mul(b, b);
        x = mg.mul(x, b);
        c = mg.mul(b, b);
        t = mg.mul(t, c);
        m = i;
    }
    return mg.from(x);
}

}  // namespace detail

// For a prime p = 1 (mod 3), a prime element rho with N(rho) = p: the
// positive representative with a <= b. Found by Cornacchia's descent on
// x^2 + 3y^2 = p and the change of pair (a, b) = (x - y, 2y).
inline EisensteinInt split_prime(u64 p) {
    if (p >= (u64{1} << 62)) throw std::domain_error("split_prime: prime must be < 2^62");
    if (!is_prime(p)) throw std::domain_error("split_prime: input is not prime");
    if (p % 3 != 1) throw std::domain_error("split_prime: prime is not 1 mod 3");
    const u64 root = detail::sqrt_mod(p - 3, p);
    for (u64 s : {root, p - root}) {
        if (s == 0 || s >= p) continue;
        if (u64(u128(s) * s % p) != p - 3) break;  // -3 not a residue: cannot happen for split p
        u64 r0 = p, r1 = s;
        const u64 bound = isqrt_u64(p);
        while (r1 > bound) {
            const u64 r2 = r0 % r1;
            r0 = r1;
            r1 = r2;
        }
        const u64 x = r1;
        const u64 rem = p - x * x;
        if (rem % 3 != 0) continue;
        const u64 y2 = rem / 3;
        const u64 y = isqrt_u64(y2);
        if (y * y != y2) continue;
        const Representation rep =
            positive_representative(EisensteinInt(i64(x) - i64(y), 2 * i64(y)));
        const i64 a = std::min(rep.a, rep.b);
        const i64 b = std::max(rep.a, rep.b);
        return EisensteinInt(a, b);
    }
    // Descent did not land on a representation; exact brute force covers the
    // small range, beyond it this would contradict the splitting theorem.
    if (p < 10'000'000'000ULL) {
        for (u64 a = 1; a * a <= p; ++a) {
            const u64 disc = 4 * p - 3 * a * a;
            const u64 d = isqrt_u64(disc);
            if (d * d != disc || d <= a || ((d - a) & 1) != 0) continue;
            const u64 b = (d - a) / 2;
            if (a <= b) return EisensteinInt(i64(a), i64(b));
        }
    }
    throw invariant_violation("split_prime: no representation found for a split prime");
}

}  // namespace cubesum
