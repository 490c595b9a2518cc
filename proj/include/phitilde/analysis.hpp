#pragma once

#include <phitilde/bounds.hpp>
#include <phitilde/outcome.hpp>
#include <phitilde/sieve.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phitilde {

// Exact preimage computation. Writing s(k) = {n : phi_tilde(n) = k}, the
// threshold certificate for k caps every solution, so one bucketed scan up
// to the bound yields s(k) complete, not just sampled.

struct PreimageReport {
  uint64_t k;
  ThresholdCertificate certificate;
  std::vector<uint64_t> elements; // ascending, complete
  std::string classification;    // "empty" | "singleton" | "multiple"
};

// s(k) for every k <= max_k from one shared scan up to the largest bound.
struct PreimageTable {
  uint64_t max_k;
  uint64_t scan_bound;
  std::vector<ThresholdCertificate> certificates; // index k, entry 0 unused
  std::vector<std::vector<uint64_t>> sets;        // index k, entry 0 empty
};

// Empirical density report for the missing values. The underlying
// infinitude question stays open; this only tabulates evidence.
struct ConjectureScanReport {
  uint64_t max_k;
  uint64_t scan_bound;
  std::vector<uint64_t> missing;
  uint64_t missing_count;
  double density; // missing_count / max_k
};

/// "empty", "singleton" or "multiple" from a set size.
std::string classify(size_t count);

/// Certificates and complete preimage sets for all k <= max_k.
/// Throws ResourceError when the k = max_k bound exceeds scan capacity.
PreimageTable preimage_table(uint64_t max_k, const SieveTables& tables,
                             int threads = 0);

/// Complete s(k) with its certificate.
PreimageReport preimage(uint64_t k, const SieveTables& tables,
                        int threads = 0);

/// min s(k), or nullopt when s(k) is empty.
std::optional<uint64_t> smallest_preimage(uint64_t k,
                                          const SieveTables& tables);

/// Ascending k <= max_k with s(k) empty.
std::vector<uint64_t> missing_values(uint64_t max_k, const SieveTables& tables,
                                     int threads = 0);

/// Ascending k <= max_k with |s(k)| = 1.
std::vector<uint64_t> singleton_values(uint64_t max_k,
                                       const SieveTables& tables,
                                       int threads = 0);

/// Missing-value density for k <= max_k.
ConjectureScanReport conjecture_scan(uint64_t max_k, const SieveTables& tables,
                                     int threads = 0);

/// Exhaustive check of one structural property of phi_tilde over [1, limit]:
///   squarefree_part     phi_tilde(n) >= phi_tilde(rad(n))
///   prime_power_growth  phi_tilde(n^j) < phi_tilde(n^{j+1}) for n >= 3
///   prime_swap          phi_tilde(n p) <= phi_tilde(n q) for primes
///                       p < q with gcd(pq, n) = 1 and n q <= limit
///   primorial_min       phi_tilde(N_omega(a)) <= phi_tilde(a)
/// Unknown id throws std::invalid_argument.
VerificationOutcome check_property(const std::string& id, uint64_t limit,
                                   const SieveTables& tables);

/// Re-derive every bundled reference claim: the n = 1..20 table of E_n, the
/// smallest-preimage table for k = 1..60, the nineteen full preimage sets,
/// the empty-value triple and the singleton list for k <= 100. One outcome
/// per claim; the value-1 listing that omits n = 1 passes with an erratum
/// note. `data_dir` empty means default_data_dir().
std::vector<VerificationOutcome> verify_paper_tables(
    const SieveTables& tables, const std::string& data_dir = "");

} // namespace phitilde
