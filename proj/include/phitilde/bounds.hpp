#pragma once

#include <phitilde/outcome.hpp>
#include <phitilde/sieve.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace phitilde {

// Effective finiteness machinery. Two independent arguments cap where
// phi_tilde(m) = k can still happen:
//
//   1. For omega(m) = b fixed, take the smallest l with l(l+1)/2 > k and
//      p = nth_prime(b + l + 1). Among the b + l primes below p at most b
//      divide m, leaving l primes q_1 < ... < q_l coprime to m; once m > p^2
//      the products q_i q_j (i <= j) are l(l+1)/2 distinct members of E_m
//      besides 1, so phi_tilde(m) > k. Bound: B(k, b) = p^2.
//
//   2. For omega(m) large, phi_tilde(m) >= phi_tilde(N_omega(m)) (primorials
//      minimize phi_tilde within an omega class), and phi_tilde(N_i) > |Q_i|
//      >= i for i >= 4, where Q_i = {primes r : r > p_i, r * p_{i+1} < N_i}
//      and |Q_4| = 4 anchors strictly increasing growth.
//
// Combining: with cutoff = max(4, k+1), any m with omega(m) >= cutoff has
// phi_tilde(m) > k outright, and each class b < cutoff is capped by B(k, b).
// The maximum of the class bounds is a global threshold N(k): every solution
// of phi_tilde(m) = k satisfies m <= N(k), so preimages are finite and
// exactly computable by scanning up to N(k).

// The set Q_i from the primorial growth argument.
struct QiReport {
  uint64_t i;
  std::vector<uint64_t> q_elements;
  uint64_t cardinality;
};

// Everything needed to certify that phi_tilde(m) = k has no solution
// m > global_bound.
struct ThresholdCertificate {
  uint64_t k;
  uint64_t primorial_cutoff; // omega >= this falls to the primorial argument
  std::vector<std::pair<uint64_t, uint64_t>> per_class_bounds; // (b, B(k, b))
  uint64_t global_bound; // max of the per-class bounds
};

// One row of the primorial growth table: phi_tilde at N_i with its
// ingredients, plus |Q_i| once the Q argument applies (i >= 4).
struct PrimorialRow {
  uint64_t i;
  uint64_t n_i;
  uint64_t phi;
  uint64_t pi;
  uint64_t phi_tilde;
  std::optional<uint64_t> q_cardinality;
};

/// Smallest l >= 1 with l(l+1)/2 > k.
uint64_t triangular_index(uint64_t k);

/// The omega-class bound B(k, b) = nth_prime(b + l + 1)^2, l as above.
/// Every n with omega(n) = b and n > B(k, b) has phi_tilde(n) > k. b >= 1.
uint64_t omega_class_bound(uint64_t k, uint64_t b);

/// Exact Q_i with its elements, enumerated from the sieve. Requires i >= 4
/// and (N_i - 1) / p_{i+1} <= tables.limit.
QiReport compute_Q(uint64_t i, const SieveTables& tables);

/// |Q_i| by prime counting alone: pi((N_i - 1) / p_{i+1}) - i. Reaches far
/// beyond tables.limit (Q_10 needs pi at ~2.1e8). Requires i >= 4.
uint64_t q_cardinality(uint64_t i, const SieveTables& tables);

/// The full certificate for k >= 1: cutoff max(4, k+1), class bounds for
/// 1 <= b < cutoff, global bound their maximum.
ThresholdCertificate global_threshold(uint64_t k);

/// phi_tilde(N_i) rows for i = 1..i_max, with |Q_i| from i = 4 on.
std::vector<PrimorialRow> primorial_growth_rows(uint64_t i_max,
                                                const SieveTables& tables);

/// Machine check of the growth chain for i up to i_max:
///   (a) |Q_i| < |Q_{i+1}| for 4 <= i < i_max,
///   (b) |Q_i| >= i        for 4 <= i <= i_max,
///   (c) phi_tilde(N_i) < phi_tilde(N_{i+1}) for 3 <= i < i_max,
///   (d) phi_tilde(N_i) > |Q_i| for 4 <= i <= i_max.
VerificationOutcome verify_primorial_growth(uint64_t i_max,
                                            const SieveTables& tables);

} // namespace phitilde
