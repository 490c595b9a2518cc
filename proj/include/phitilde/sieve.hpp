#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace phitilde {

// Default table size used by the CLI; raisable up to kMaxSieveLimit.
inline constexpr uint64_t kDefaultSieveLimit = 1'000'000;

// Hard cap on in-memory tables: 14 bytes per entry, ~1.4 GiB at the cap.
inline constexpr uint64_t kMaxSieveLimit = 100'000'000;

// Feasibility cap for exact prime counting beyond the tables.
inline constexpr uint64_t kMaxPrimeCountArg = 100'000'000'000ULL;

// Largest index served by nth_prime (p_i ~ 1.55e7 at the cap).
inline constexpr uint64_t kNthPrimeCap = 1'000'000;

// Window width for segmented scans.
inline constexpr uint64_t kSegmentWidth = uint64_t{1} << 20;

// Per-n arithmetic data, immutable after construction and safe for
// concurrent reads. All arrays are indexed 1..limit; index 0 is unused.
struct SieveTables {
  uint64_t limit = 0;
  std::vector<uint32_t> spf;       // smallest prime factor; spf[1] = 1 sentinel
  std::vector<uint32_t> phi;       // Euler totient
  std::vector<uint8_t> omega;      // number of distinct prime factors
  std::vector<uint8_t> is_prime;   // 1 is not prime
  std::vector<uint32_t> pi_prefix; // pi_prefix[n] = number of primes <= n
};

// One-pass linear sieve filling every table. Deterministic.
// Throws CapacityError if limit exceeds kMaxSieveLimit.
SieveTables build_sieve(uint64_t limit);

// Prime factorization of n as (prime, exponent) pairs in ascending prime
// order; empty for n = 1. Throws std::out_of_range for n > tables.limit.
std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n,
                                                     const SieveTables& tables);

// The i-th prime (1-based: nth_prime(1) = 2). Backed by a growing cache;
// throws ResourceError beyond kNthPrimeCap.
uint64_t nth_prime(uint64_t i);

// Product of the first i primes; 1 for i = 0. Throws std::overflow_error
// when the product leaves 64 bits (i > 15).
uint64_t primorial(uint64_t i);

// Exact pi(x). Reads pi_prefix for x <= tables.limit, otherwise switches to
// the sublinear method. Throws ResourceError for x > kMaxPrimeCountArg.
uint64_t prime_count(uint64_t x, const SieveTables& tables);

// Sublinear pi(x) in O(x^(3/4)) time and O(sqrt x) memory, independent of
// any tables. Used directly when the sieve path must not be consulted.
uint64_t prime_count_sublinear(uint64_t x);

// Exact pi(x) by marking windows of kSegmentWidth. Needs base primes up to
// sqrt(x) from the tables. The parallel version splits windows across
// threads (0 = library default); the serial version is the reference.
uint64_t count_primes_segmented(uint64_t x, const SieveTables& tables,
                                int threads = 0);
uint64_t count_primes_segmented_serial(uint64_t x, const SieveTables& tables);

// All primes <= x read off the tables. Requires x <= tables.limit.
std::vector<uint64_t> primes_up_to(uint64_t x, const SieveTables& tables);

// Floor of sqrt(x), exact for all 64-bit x.
uint64_t isqrt(uint64_t x);

} // namespace phitilde

