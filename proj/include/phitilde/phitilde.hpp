#pragma once

#include <phitilde/sieve.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace phitilde {

// phi_tilde(n) counts the m in [1, n] that are coprime to n and not prime.
// Writing E_n for that set, phi_tilde(n) = |E_n| = phi(n) - pi(n) + omega(n):
// the pi(n) primes up to n fail the "not prime" test, but omega(n) of them
// divide n and were never counted by phi in the first place.
// 1 is coprime to everything and not prime, so phi_tilde(n) >= 1 always.

struct PhiTildeRecord {
  uint64_t n;
  uint64_t phi;
  uint64_t pi;        // pi(n), primes <= n
  uint32_t omega;     // distinct prime factors of n
  uint64_t phi_tilde; // phi - pi + omega
};

// The set E_n itself, in increasing order. 1 is always a member.
struct CoprimeCompositeSet {
  uint64_t n;
  std::vector<uint64_t> elements;
};

/// Exact enumeration of E_n: mark multiples of each prime factor of n in a
/// window of size n, keep the unmarked entries that are not prime.
/// Requires n <= tables.limit.
CoprimeCompositeSet enumerate_E(uint64_t n, const SieveTables& tables);

/// |E_n| by the same marking enumeration, without materializing the set.
/// The ground-truth oracle the formula is validated against.
uint64_t phi_tilde_oracle(uint64_t n, const SieveTables& tables);

/// phi_tilde(n) via the formula, bundled with its ingredients.
/// Requires n <= tables.limit.
PhiTildeRecord phi_tilde(uint64_t n, const SieveTables& tables);

/// phi_tilde at the k-th prime: p_k minus the k primes <= p_k, plus the one
/// prime dividing p_k. Needs no tables; valid for any k nth_prime accepts.
uint64_t phi_tilde_at_prime_index(uint64_t k);

/// phi_tilde at the i-th primorial N_i = p_1 * ... * p_i, computed from
/// phi(N_i) = prod (p_j - 1), pi(N_i) by prime counting, omega = i.
/// Works far beyond tables.limit; for N_i <= tables.limit it must agree
/// with phi_tilde(N_i). i <= 15 fits in 64 bits, i <= 11 fits the pi cap.
uint64_t phi_tilde_primorial(uint64_t i, const SieveTables& tables);

/// Smallest n in [from, to] where the formula and the enumeration oracle
/// disagree, or nullopt if they agree everywhere. Parallel over n;
/// `threads` <= 0 means use the OpenMP default.
std::optional<uint64_t> find_formula_mismatch(uint64_t from, uint64_t to,
                                              const SieveTables& tables,
                                              int threads = 0);

/// Serial reference for find_formula_mismatch, same contract.
std::optional<uint64_t> find_formula_mismatch_serial(uint64_t from, uint64_t to,
                                                     const SieveTables& tables);

} // namespace phitilde
