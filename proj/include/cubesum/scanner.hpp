#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cubesum/cubic_identity.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/factorint.hpp"
#include "cubesum/numeric.hpp"

namespace cubesum {

struct Counterexample {
    u64 n = 0;
    u64 prime = 0;
    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct Disagreement {
    u64 n = 0;
    bool by_multiplicity = false;
    bool by_exclusion = false;
    bool solver_checked = false;
    bool solver = false;
    friend bool operator==(const Disagreement&, const Disagreement&) = default;
};

enum class ScanMode { Conjecture, Equivalence };

struct ScanReport {
    ScanMode mode = ScanMode::Conjecture;
    u64 n_lo = 0;
    u64 n_hi = 0;
    u64 checked = 0;
    u64 enum_cap = 0;  // equivalence mode only
    std::vector<Counterexample> counterexamples;
    std::vector<Disagreement> disagreements;
    unsigned workers = 1;
    double elapsed_seconds = 0.0;
    double throughput = 0.0;  // n per second

    bool clean() const { return counterexamples.empty() && disagreements.empty(); }
};

using ProgressFn = std::function<void(u64 processed, u64 total)>;

namespace detail {

inline constexpr u64 kScanIndexLimit = 100'000'000ULL;  // n_hi < 10^8
inline constexpr u64 kScanChunk = 4096;
inline constexpr u64 kDefaultProgressStride = 1'000'000;

inline const std::vector<u64>& inert_small_primes() {
    static const std::vector<u64> v = [] {
        std::vector<u64> out;
        for (u64 p : small_primes())
            if (p % 3 == 2) out.push_back(p);
        return out;
    }();
    return v;
}

inline const std::vector<u64>& split_small_primes() {
    static const std::vector<u64> v = [] {
        std::vector<u64> out;
        for (u64 p : small_primes())
            if (p % 3 == 1) out.push_back(p);
        return out;
    }();
    return v;
}

// Full factorization of N = n^2 + n + 1 with inert primes reported. The
// factor 3 (present exactly when n = 1 mod 3) is stripped first, then small
// inert primes are tried before anything else: a hit is already a
// counterexample. The cofactor is finished off by the general machinery.
inline void scan_one_conjecture(u64 n, std::vector<Counterexample>& out) {
    u64 rem = cubic_norm(n);
    if (rem % 3 == 0) rem /= 3;
    for (u64 p : inert_small_primes()) {
        if (p * p > rem) break;
        if (rem % p == 0) {
            out.push_back({n, p});
            do {
                rem /= p;
            } while (rem % p == 0);
        }
    }
    for (u64 p : split_small_primes()) {
        if (p * p > rem) break;
        while (rem % p == 0) rem /= p;
    }
    if (rem == 1) return;
    for (const auto& f : factor(rem).factors)
        if (f.prime % 3 == 2) out.push_back({n, f.prime});
}

inline void scan_one_equivalence(u64 n, u64 enum_cap, std::vector<Disagreement>& out) {
    const bool by_mult = has_nontrivial_by_multiplicity(n);
    const bool by_excl = has_nontrivial_by_exclusion(n);
    const bool solver_checked = n <= enum_cap;
    bool solver = false;
    if (solver_checked) solver = !solve(n).empty();
    if (by_mult != by_excl || (solver_checked && solver != by_mult))
        out.push_back({n, by_mult, by_excl, solver_checked, solver});
}

// Static chunking: chunk i covers a fixed slice of the range and is handled
// by worker i mod W, so the set of chunks (and their results) is identical
// for every worker count. Results are merged in chunk order.
template <typename PerChunk>
inline void run_chunks(u64 n_lo, u64 n_hi, unsigned workers, const ProgressFn& progress,
                       u64 progress_stride, PerChunk per_chunk) {
    const u64 total = n_hi - n_lo + 1;
    const u64 nchunks = (total + kScanChunk - 1) / kScanChunk;
    std::atomic<u64> done{0};
    std::mutex mtx;
    std::exception_ptr first_error;
    auto body = [&](unsigned tid) {
        try {
            for (u64 ci = tid; ci < nchunks; ci += workers) {
                const u64 lo = n_lo + ci * kScanChunk;
                const u64 hi = std::min(n_hi, lo + kScanChunk - 1);
                per_chunk(ci, lo, hi);
                const u64 len = hi - lo + 1;
                const u64 before = done.fetch_add(len);
                if (progress && progress_stride > 0 &&
                    before / progress_stride != (before + len) / progress_stride) {
                    std::lock_guard<std::mutex> lk(mtx);
                    progress(std::min(before + len, total), total);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mtx);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (workers <= 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body, t);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

inline void check_scan_range(u64 n_lo, u64 n_hi, unsigned workers, const char* who) {
    if (n_lo == 0 || n_lo > n_hi || n_hi >= kScanIndexLimit)
        throw std::domain_error(std::string(who) +
                                ": range must satisfy 1 <= n_lo <= n_hi < 10^8");
    if (workers == 0) throw std::domain_error(std::string(who) + ": workers must be positive");
}

}  // namespace detail

// Scans every n in [n_lo, n_hi] for a prime divisor of n^2+n+1 congruent to
// 2 mod 3. The report is deterministic: independent of worker count, and
// every recorded counterexample is re-verified before it is returned.
inline ScanReport scan_conjecture(u64 n_lo, u64 n_hi, unsigned workers = 1,
                                  const ProgressFn& progress = {},
                                  u64 progress_stride = detail::kDefaultProgressStride) {
    detail::check_scan_range(n_lo, n_hi, workers, "scan_conjecture");
    const auto start = std::chrono::steady_clock::now();
    const u64 total = n_hi - n_lo + 1;
    const u64 nchunks = (total + detail::kScanChunk - 1) / detail::kScanChunk;
    std::vector<std::vector<Counterexample>> hits(nchunks);
    std::vector<u64> counted(nchunks, 0);
    detail::run_chunks(n_lo, n_hi, workers, progress, progress_stride,
                       [&](u64 ci, u64 lo, u64 hi) {
                           for (u64 n = lo; n <= hi; ++n)
                               detail::scan_one_conjecture(n, hits[ci]);
                           counted[ci] = hi - lo + 1;
                       });
    ScanReport rep;
    rep.mode = ScanMode::Conjecture;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.workers = workers;
    for (u64 ci = 0; ci < nchunks; ++ci) {
        rep.checked += counted[ci];
        rep.counterexamples.insert(rep.counterexamples.end(), hits[ci].begin(), hits[ci].end());
    }
    std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
              [](const Counterexample& a, const Counterexample& b) {
                  return a.n != b.n ? a.n < b.n : a.prime < b.prime;
              });
    for (const auto& ce : rep.counterexamples) {
        if (!(is_prime(ce.prime) && ce.prime % 3 == 2 && cubic_norm(ce.n) % ce.prime == 0))
            throw invariant_violation("scan_conjecture: counterexample failed re-verification");
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.throughput = rep.elapsed_seconds > 0 ? double(rep.checked) / rep.elapsed_seconds : 0.0;
    return rep;
}

// Checks has_nontrivial_by_multiplicity = has_nontrivial_by_exclusion on every n in range, and both
// against the enumerating solver for n <= enum_cap.
inline ScanReport scan_equivalence(u64 n_lo, u64 n_hi, u64 enum_cap, unsigned workers = 1,
                                   const ProgressFn& progress = {},
                                   u64 progress_stride = detail::kDefaultProgressStride) {
    detail::check_scan_range(n_lo, n_hi, workers, "scan_equivalence");
    if (n_lo < 2)
        throw std::domain_error("scan_equivalence: range must start at n >= 2");
    if (enum_cap > 1'000'000ULL)
        throw std::domain_error("scan_equivalence: enum_cap must be <= 10^6");
    const auto start = std::chrono::steady_clock::now();
    const u64 total = n_hi - n_lo + 1;
    const u64 nchunks = (total + detail::kScanChunk - 1) / detail::kScanChunk;
    std::vector<std::vector<Disagreement>> hits(nchunks);
    std::vector<u64> counted(nchunks, 0);
    detail::run_chunks(n_lo, n_hi, workers, progress, progress_stride,
                       [&](u64 ci, u64 lo, u64 hi) {
                           for (u64 n = lo; n <= hi; ++n)
                               detail::scan_one_equivalence(n, enum_cap, hits[ci]);
                           counted[ci] = hi - lo + 1;
                       });
    ScanReport rep;
    rep.mode = ScanMode::Equivalence;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.enum_cap = enum_cap;
    rep.workers = workers;
    for (u64 ci = 0; ci < nchunks; ++ci) {
        rep.checked += counted[ci];
        rep.disagreements.insert(rep.disagreements.end(), hits[ci].begin(), hits[ci].end());
    }
    std::sort(rep.disagreements.begin(), rep.disagreements.end(),
              [](const Disagreement& a, const Disagreement& b) { return a.n < b.n; });
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.throughput = rep.elapsed_seconds > 0 ? double(rep.checked) / rep.elapsed_seconds : 0.0;
    return rep;
}

// Canonical text rendering. The runtime block (workers, timing) is volatile
// between runs; leaving it out yields a byte-stable report for determinism
// comparisons.
inline std::string report_text(const ScanReport& r, bool include_runtime = true) {
    std::ostringstream os;
    os << "mode: " << (r.mode == ScanMode::Conjecture ? "conjecture" : "equivalence") << '\n';
    os << "range: [" << r.n_lo << ", " << r.n_hi << "]\n";
    os << "checked: " << r.checked << '\n';
    if (r.mode == ScanMode::Conjecture) {
        os << "counterexamples: " << r.counterexamples.size() << '\n';
        for (const auto& ce : r.counterexamples)
            os << "  n = " << ce.n << ": prime " << ce.prime
               << " = 2 (mod 3) divides n^2+n+1\n";
    } else {
        os << "enum-cap: " << r.enum_cap << '\n';
        os << "disagreements: " << r.disagreements.size() << '\n';
        for (const auto& d : r.disagreements) {
            os << "  n = " << d.n << ": multiplicity = " << (d.by_multiplicity ? "yes" : "no")
               << ", exclusion = " << (d.by_exclusion ? "yes" : "no");
            if (d.solver_checked) os << ", solver = " << (d.solver ? "yes" : "no");
            os << '\n';
        }
    }
    if (include_runtime) {
        os << "workers: " << r.workers << '\n';
        os << "elapsed: " << r.elapsed_seconds << " s\n";
        os << "throughput: " << u64(r.throughput) << " n/s\n";
    }
    return os.str();
}

}  // namespace cubesum
