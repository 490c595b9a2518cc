#include <phitilde/phitilde.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phitilde {

namespace {

void require_in_range(uint64_t n, const SieveTables& tables, const char* who) {
  if (n < 1 || n > tables.limit) {
    throw std::out_of_range(std::string(who) + ": n = " + std::to_string(n) +
                            " outside [1, " + std::to_string(tables.limit) +
                            "]");
  }
}

// mark[m] = 1 for every m in [1, n] sharing a prime factor with n.
// Marking multiples of each distinct prime factor beats n gcd calls.
void mark_noncoprime(uint64_t n, const SieveTables& tables,
                     std::vector<uint8_t>& mark) {
  mark.assign(n + 1, 0);
  uint64_t rest = n;
  while (rest > 1) {
    const uint64_t p = tables.spf[rest];
    for (uint64_t m = p; m <= n; m += p) mark[m] = 1;
    while (rest % p == 0) rest /= p;
  }
}

// |E_n| without materializing the set. Reads only spf and is_prime, while
// the formula path reads phi, pi_prefix and omega, so the two agree only if
// the sieve filled every array consistently.
uint64_t count_E(uint64_t n, const SieveTables& tables,
                 std::vector<uint8_t>& mark) {
  mark_noncoprime(n, tables, mark);
  uint64_t count = 0;
  for (uint64_t m = 1; m <= n; ++m) {
    if (!mark[m] && !tables.is_prime[m]) ++count;
  }
  return count;
}

uint64_t phi_tilde_value(uint64_t n, const SieveTables& tables) {
  // phi + omega >= pi for every n, so the subtraction stays in range.
  return tables.phi[n] + tables.omega[n] - tables.pi_prefix[n];
}

} // namespace

CoprimeCompositeSet enumerate_E(uint64_t n, const SieveTables& tables) {
  require_in_range(n, tables, "enumerate_E");
  CoprimeCompositeSet set;
  set.n = n;
  std::vector<uint8_t> mark;
  mark_noncoprime(n, tables, mark);
  for (uint64_t m = 1; m <= n; ++m) {
    if (!mark[m] && !tables.is_prime[m]) set.elements.push_back(m);
  }
  return set;
}

uint64_t phi_tilde_oracle(uint64_t n, const SieveTables& tables) {
  require_in_range(n, tables, "phi_tilde_oracle");
  std::vector<uint8_t> mark;
  return count_E(n, tables, mark);
}

PhiTildeRecord phi_tilde(uint64_t n, const SieveTables& tables) {
  require_in_range(n, tables, "phi_tilde");
  PhiTildeRecord r;
  r.n = n;
  r.phi = tables.phi[n];
  r.pi = tables.pi_prefix[n];
  r.omega = tables.omega[n];
  r.phi_tilde = r.phi + r.omega - r.pi;
  return r;
}

uint64_t phi_tilde_at_prime_index(uint64_t k) {
  return nth_prime(k) - k;
}

uint64_t phi_tilde_primorial(uint64_t i, const SieveTables& tables) {
  if (i < 1) throw std::invalid_argument("phi_tilde_primorial: i must be >= 1");
  const uint64_t n = primorial(i); // throws if i > 15
  uint64_t phi = 1;
  for (uint64_t j = 1; j <= i; ++j) phi *= nth_prime(j) - 1;
  const uint64_t pi = prime_count(n, tables);
  return phi + i - pi;
}

std::optional<uint64_t> find_formula_mismatch_serial(uint64_t from, uint64_t to,
                                                     const SieveTables& tables) {
  from = std::max<uint64_t>(from, 1);
  if (from > to) return std::nullopt;
  require_in_range(to, tables, "find_formula_mismatch_serial");
  std::vector<uint8_t> mark;
  for (uint64_t n = from; n <= to; ++n) {
    if (phi_tilde_value(n, tables) != count_E(n, tables, mark)) return n;
  }
  return std::nullopt;
}

std::optional<uint64_t> find_formula_mismatch(uint64_t from, uint64_t to,
                                              const SieveTables& tables,
                                              int threads) {
  from = std::max<uint64_t>(from, 1);
  if (from > to) return std::nullopt;
  require_in_range(to, tables, "find_formula_mismatch");

  const int64_t lo = static_cast<int64_t>(from);
  const int64_t hi = static_cast<int64_t>(to);
  uint64_t first_bad = UINT64_MAX;

#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  const int nt = 1;
#endif

#pragma omp parallel num_threads(nt)
  {
    std::vector<uint8_t> mark;
    uint64_t local_bad = UINT64_MAX;
    // Dynamic schedule: the per-n cost grows with n, so fixed chunks skew.
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 512)
#endif
    for (int64_t n = lo; n <= hi; ++n) {
      const uint64_t un = static_cast<uint64_t>(n);
      if (phi_tilde_value(un, tables) != count_E(un, tables, mark)) {
        local_bad = std::min(local_bad, un);
      }
    }
#pragma omp critical
    first_bad = std::min(first_bad, local_bad);
  }

  if (first_bad == UINT64_MAX) return std::nullopt;
  return first_bad;
}

} // namespace phitilde
