#include <phitilde/sieve.hpp>

#include <phitilde/errors.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phitilde {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace

uint64_t isqrt(uint64_t x) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  // Capping r at 2^32 - 1 keeps both squares below 2^64.
  constexpr uint64_t kRootMax = 4294967295ULL;
  if (r > kRootMax) r = kRootMax;
  while (r > 0 && r * r > x) --r;
  while (r < kRootMax && (r + 1) * (r + 1) <= x) ++r;
  return r;
}

SieveTables build_sieve(uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("build_sieve: limit must be >= 1");
  if (limit > kMaxSieveLimit) {
    throw CapacityError("build_sieve: limit " + std::to_string(limit) +
                        " exceeds the in-memory budget cap of " +
                        std::to_string(kMaxSieveLimit) +
                        " (14 bytes per entry, ~1.4 GiB at the cap)");
  }

  SieveTables t;
  t.limit = limit;
  t.spf.assign(limit + 1, 0);
  t.phi.assign(limit + 1, 0);
  t.omega.assign(limit + 1, 0);
  t.is_prime.assign(limit + 1, 0);
  t.pi_prefix.assign(limit + 1, 0);

  t.spf[1] = 1; // sentinel: 1 has no prime factor
  t.phi[1] = 1;

  std::vector<uint32_t> primes;
  for (uint64_t n = 2; n <= limit; ++n) {
    if (t.spf[n] == 0) {
      t.spf[n] = static_cast<uint32_t>(n);
      t.phi[n] = static_cast<uint32_t>(n - 1);
      t.omega[n] = 1;
      primes.push_back(static_cast<uint32_t>(n));
    }
    for (uint32_t p : primes) {
      if (p > t.spf[n]) break;
      uint64_t m = n * p;
      if (m > limit) break;
      t.spf[m] = p;
      if (p == t.spf[n]) {
        t.phi[m] = t.phi[n] * p;
        t.omega[m] = t.omega[n];
      } else {
        t.phi[m] = t.phi[n] * (p - 1);
        t.omega[m] = static_cast<uint8_t>(t.omega[n] + 1);
      }
    }
  }

  uint32_t count = 0;
  for (uint64_t n = 2; n <= limit; ++n) {
    if (t.spf[n] == n) {
      t.is_prime[n] = 1;
      ++count;
    }
    t.pi_prefix[n] = count;
  }
  return t;
}

std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n,
                                                     const SieveTables& tables) {
  if (n < 1 || n > tables.limit) {
    throw std::out_of_range("factorize: n = " + std::to_string(n) +
                            " outside [1, " + std::to_string(tables.limit) + "]");
  }
  std::vector<std::pair<uint64_t, uint32_t>> factors;
  while (n > 1) {
    uint64_t p = tables.spf[n];
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  return factors;
}

namespace {

// Growable prime cache behind nth_prime. Rebuilt from scratch on growth,
// which is rare and cheap relative to the lookups it serves.
class PrimeCache {
public:
  uint64_t get(uint64_t i) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (i > primes_.size()) grow(i);
    return primes_[i - 1];
  }

private:
  void grow(uint64_t want) {
    // p_i < i (ln i + ln ln i) for i >= 6
    uint64_t bound = 15;
    if (want >= 6) {
      double di = static_cast<double>(want);
      bound = static_cast<uint64_t>(di * (std::log(di) + std::log(std::log(di)))) + 16;
    }
    std::vector<uint8_t> composite(bound + 1, 0);
    primes_.clear();
    for (uint64_t n = 2; n <= bound; ++n) {
      if (composite[n]) continue;
      primes_.push_back(n);
      for (uint64_t m = n * n; m <= bound; m += n) composite[m] = 1;
    }
    assert(primes_.size() >= want);
  }

  std::mutex mutex_;
  std::vector<uint64_t> primes_;
};

PrimeCache& prime_cache() {
  static PrimeCache cache;
  return cache;
}

} // namespace

uint64_t nth_prime(uint64_t i) {
  if (i < 1) throw std::invalid_argument("nth_prime: index must be >= 1");
  if (i > kNthPrimeCap) {
    throw ResourceError("nth_prime: index " + std::to_string(i) +
                        " beyond the configured cap of " +
                        std::to_string(kNthPrimeCap));
  }
  return prime_cache().get(i);
}

uint64_t primorial(uint64_t i) {
  uint64_t result = 1;
  for (uint64_t j = 1; j <= i; ++j) {
    uint64_t p = nth_prime(j);
    if (__builtin_mul_overflow(result, p, &result)) {
      throw std::overflow_error("primorial: product of the first " +
                                std::to_string(i) +
                                " primes does not fit in 64 bits (max i = 15)");
    }
  }
  return result;
}

uint64_t prime_count_sublinear(uint64_t x) {
  if (x < 2) return 0;
  if (x > kMaxPrimeCountArg) {
    throw ResourceError("prime_count_sublinear: x = " + std::to_string(x) +
                        " beyond the feasibility cap of " +
                        std::to_string(kMaxPrimeCountArg));
  }
  const uint64_t r = isqrt(x);
  // small[v] and large[d] hold the running count of integers in [2, v]
  // (resp. [2, x/d]) not removed by any processed prime.
  std::vector<uint64_t> small(r + 1), large(r + 1);
  for (uint64_t v = 1; v <= r; ++v) small[v] = v - 1;
  for (uint64_t d = 1; d <= r; ++d) large[d] = x / d - 1;

  for (uint64_t p = 2; p <= r; ++p) {
    if (small[p] == small[p - 1]) continue; // p is composite
    const uint64_t below = small[p - 1];
    const uint64_t p2 = p * p;
    const uint64_t dmax = std::min(r, x / p2);
    for (uint64_t d = 1; d <= dmax; ++d) {
      const uint64_t dp = d * p;
      large[d] -= (dp <= r ? large[dp] : small[x / dp]) - below;
    }
    for (uint64_t v = r; v >= p2; --v) small[v] -= small[v / p] - below;
  }
  return large[1];
}

uint64_t prime_count(uint64_t x, const SieveTables& tables) {
  if (x <= tables.limit) return x == 0 ? 0 : tables.pi_prefix[x];
  return prime_count_sublinear(x);
}

std::vector<uint64_t> primes_up_to(uint64_t x, const SieveTables& tables) {
  if (x > tables.limit) {
    throw std::out_of_range("primes_up_to: x = " + std::to_string(x) +
                            " exceeds tables.limit = " +
                            std::to_string(tables.limit));
  }
  std::vector<uint64_t> primes;
  if (x >= 2) {
    primes.reserve(static_cast<size_t>(tables.pi_prefix[x]));
    for (uint64_t n = 2; n <= x; ++n) {
      if (tables.is_prime[n]) primes.push_back(n);
    }
  }
  return primes;
}

namespace {

// Count primes in [lo, hi] by crossing off multiples of the base primes.
// Base primes must cover everything up to sqrt(hi).
uint64_t count_segment(uint64_t lo, uint64_t hi,
                       const std::vector<uint64_t>& base,
                       std::vector<uint8_t>& mark) {
  const size_t len = static_cast<size_t>(hi - lo + 1);
  mark.assign(len, 0);
  for (uint64_t p : base) {
    if (p * p > hi) break;
    uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (uint64_t m = start; m <= hi; m += p) mark[m - lo] = 1;
  }
  uint64_t count = 0;
  for (size_t i = 0; i < len; ++i) count += !mark[i];
  return count;
}

std::vector<uint64_t> base_primes_for(uint64_t x, const SieveTables& tables) {
  const uint64_t root = isqrt(x);
  if (root > tables.limit) {
    throw ResourceError("segmented count: sqrt(" + std::to_string(x) +
                        ") exceeds tables.limit = " +
                        std::to_string(tables.limit));
  }
  return primes_up_to(root, tables);
}

} // namespace

uint64_t count_primes_segmented(uint64_t x, const SieveTables& tables,
                                int threads) {
  if (x < 2) return 0;
  const auto base = base_primes_for(x, tables);
  const int64_t nseg = static_cast<int64_t>((x - 2) / kSegmentWidth) + 1;
  const int nt = resolve_threads(threads);
  uint64_t total = 0;
#pragma omp parallel num_threads(nt) reduction(+ : total)
  {
    std::vector<uint8_t> mark;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (int64_t s = 0; s < nseg; ++s) {
      const uint64_t lo = 2 + static_cast<uint64_t>(s) * kSegmentWidth;
      const uint64_t hi = std::min(x, lo + kSegmentWidth - 1);
      total += count_segment(lo, hi, base, mark);
    }
  }
  return total;
}

uint64_t count_primes_segmented_serial(uint64_t x, const SieveTables& tables) {
  if (x < 2) return 0;
  const auto base = base_primes_for(x, tables);
  std::vector<uint8_t> mark;
  uint64_t total = 0;
  for (uint64_t lo = 2; lo <= x; lo += kSegmentWidth) {
    const uint64_t hi = std::min(x, lo + kSegmentWidth - 1);
    total += count_segment(lo, hi, base, mark);
  }
  return total;
}

} // namespace phitilde
