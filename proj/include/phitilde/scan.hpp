#pragma once

#include <phitilde/sieve.hpp>

#include <cstdint>
#include <vector>

namespace phitilde {

// Bucketed phi_tilde scan: the workhorse behind preimage computation.
// One pass over [1, bound] computes phi_tilde(n) for every n from segmented
// factorizations (no per-n tables needed beyond the base primes) and collects
// each n with phi_tilde(n) <= max_k into its bucket.
//
// Segments are independent: each one factorizes its window against the base
// primes, recovers phi/omega/primality per element, and takes its starting
// prime count from prime_count(lo - 1). Buckets merge in segment order, so
// the result is identical for any thread count, including the serial
// reference, which instead carries one running prime counter across the
// whole range and never consults a prime-counting routine.

// Hard ceiling on scan ranges; keeps a stray certificate from asking for
// hours of work. Well above the ~1.5e7 needed for preimages of k <= 500.
inline constexpr uint64_t kMaxScanBound = 1'000'000'000;

struct PreimageBuckets {
  uint64_t bound;
  uint64_t max_k;
  // by_k[k] = ascending list of n <= bound with phi_tilde(n) = k; index 0
  // stays empty (phi_tilde >= 1).
  std::vector<std::vector<uint64_t>> by_k;
};

/// Parallel scan. Requires bound <= kMaxScanBound and isqrt(bound) <=
/// tables.limit (base primes must cover the range). `threads` <= 0 means
/// the OpenMP default.
PreimageBuckets scan_preimages(uint64_t bound, uint64_t max_k,
                               const SieveTables& tables, int threads = 0);

/// Serial reference scan, same contract and byte-identical results.
PreimageBuckets scan_preimages_serial(uint64_t bound, uint64_t max_k,
                                      const SieveTables& tables);

} // namespace phitilde
