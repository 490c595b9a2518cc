#include <phitilde/scan.hpp>

#include <phitilde/errors.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phitilde {

namespace {

struct SegmentScratch {
  std::vector<uint64_t> rem; // unfactored cofactor of each element
  std::vector<uint64_t> phi;
  std::vector<uint8_t> omg;
};

// Factorize the window [lo, hi] against the base primes and derive, per
// element: phi, omega, and primality (phi == m - 1 for m >= 2). Base primes
// must cover sqrt(hi); any cofactor left after them is a single prime.
void factor_segment(uint64_t lo, uint64_t hi,
                    const std::vector<uint64_t>& base, SegmentScratch& s) {
  const size_t len = static_cast<size_t>(hi - lo + 1);
  s.rem.resize(len);
  s.phi.assign(len, 1);
  s.omg.assign(len, 0);
  for (size_t j = 0; j < len; ++j) s.rem[j] = lo + j;

  for (uint64_t p : base) {
    if (p * p > hi) break;
    for (uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
      const size_t j = static_cast<size_t>(m - lo);
      uint64_t pk = 1;
      while (s.rem[j] % p == 0) {
        s.rem[j] /= p;
        pk *= p;
      }
      s.phi[j] *= pk / p * (p - 1);
      s.omg[j] += 1;
    }
  }
  for (size_t j = 0; j < len; ++j) {
    if (s.rem[j] > 1) {
      s.phi[j] *= s.rem[j] - 1;
      s.omg[j] += 1;
    }
  }
}

// Walk one factored segment: maintain the running prime count and drop each
// element with phi_tilde <= max_k into its bucket. Returns the prime count
// at the end of the segment.
uint64_t bucket_segment(uint64_t lo, uint64_t hi, uint64_t pi_before,
                        uint64_t max_k, const SegmentScratch& s,
                        std::vector<std::vector<uint64_t>>& by_k) {
  uint64_t pi = pi_before;
  for (uint64_t m = lo; m <= hi; ++m) {
    const size_t j = static_cast<size_t>(m - lo);
    const bool prime = m >= 2 && s.phi[j] == m - 1;
    if (prime) ++pi;
    const uint64_t pt = s.phi[j] + s.omg[j] - pi;
    if (pt <= max_k) by_k[pt].push_back(m);
  }
  return pi;
}

std::vector<uint64_t> base_primes_for_scan(uint64_t bound,
                                           const SieveTables& tables) {
  if (bound < 1) {
    throw std::invalid_argument("scan_preimages: bound must be >= 1");
  }
  if (bound > kMaxScanBound) {
    throw ResourceError("scan_preimages: bound " + std::to_string(bound) +
                        " exceeds the scan ceiling of " +
                        std::to_string(kMaxScanBound));
  }
  const uint64_t root = isqrt(bound);
  if (root > tables.limit) {
    throw ResourceError("scan_preimages: base primes up to " +
                        std::to_string(root) + " exceed tables.limit = " +
                        std::to_string(tables.limit));
  }
  return primes_up_to(root, tables);
}

} // namespace

PreimageBuckets scan_preimages(uint64_t bound, uint64_t max_k,
                               const SieveTables& tables, int threads) {
  const auto base = base_primes_for_scan(bound, tables);
  PreimageBuckets out;
  out.bound = bound;
  out.max_k = max_k;
  out.by_k.assign(max_k + 1, {});

  const int64_t nseg = static_cast<int64_t>((bound - 1) / kSegmentWidth) + 1;
  std::vector<std::vector<std::vector<uint64_t>>> per_segment(
      static_cast<size_t>(nseg));

#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  const int nt = 1;
#endif

#pragma omp parallel num_threads(nt)
  {
    SegmentScratch scratch;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (int64_t seg = 0; seg < nseg; ++seg) {
      const uint64_t lo = 1 + static_cast<uint64_t>(seg) * kSegmentWidth;
      const uint64_t hi = std::min(bound, lo + kSegmentWidth - 1);
      factor_segment(lo, hi, base, scratch);
      auto& local = per_segment[static_cast<size_t>(seg)];
      local.assign(max_k + 1, {});
      bucket_segment(lo, hi, prime_count(lo - 1, tables), max_k, scratch,
                     local);
    }
  }

  // Segment-order merge keeps every bucket ascending and the whole result
  // independent of scheduling.
  for (auto& local : per_segment) {
    for (uint64_t k = 0; k <= max_k; ++k) {
      auto& dst = out.by_k[k];
      dst.insert(dst.end(), local[k].begin(), local[k].end());
    }
  }
  return out;
}

PreimageBuckets scan_preimages_serial(uint64_t bound, uint64_t max_k,
                                      const SieveTables& tables) {
  const auto base = base_primes_for_scan(bound, tables);
  PreimageBuckets out;
  out.bound = bound;
  out.max_k = max_k;
  out.by_k.assign(max_k + 1, {});

  SegmentScratch scratch;
  uint64_t pi = 0; // carried across segments, counted from n = 1 upward
  for (uint64_t lo = 1; lo <= bound; lo += kSegmentWidth) {
    const uint64_t hi = std::min(bound, lo + kSegmentWidth - 1);
    factor_segment(lo, hi, base, scratch);
    pi = bucket_segment(lo, hi, pi, max_k, scratch, out.by_k);
  }
  return out;
}

} // namespace phitilde
