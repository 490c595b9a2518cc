#include <phitilde/bounds.hpp>

#include <phitilde/errors.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace phitilde {

uint64_t triangular_index(uint64_t k) {
  uint64_t l = 1;
  while (l * (l + 1) / 2 <= k) ++l;
  return l;
}

uint64_t omega_class_bound(uint64_t k, uint64_t b) {
  if (b < 1) throw std::invalid_argument("omega_class_bound: b must be >= 1");
  const uint64_t l = triangular_index(k);
  const uint64_t p = nth_prime(b + l + 1);
  return p * p;
}

QiReport compute_Q(uint64_t i, const SieveTables& tables) {
  if (i < 4) throw std::invalid_argument("compute_Q: i must be >= 4");
  const uint64_t n_i = primorial(i);
  const uint64_t p_i = nth_prime(i);
  const uint64_t r_max = (n_i - 1) / nth_prime(i + 1); // r * p_{i+1} < N_i
  if (r_max > tables.limit) {
    throw std::out_of_range("compute_Q: Q_" + std::to_string(i) +
                            " needs primes up to " + std::to_string(r_max) +
                            ", beyond tables.limit = " +
                            std::to_string(tables.limit));
  }
  QiReport report;
  report.i = i;
  for (uint64_t r = p_i + 1; r <= r_max; ++r) {
    if (tables.is_prime[r]) report.q_elements.push_back(r);
  }
  report.cardinality = report.q_elements.size();
  return report;
}

uint64_t q_cardinality(uint64_t i, const SieveTables& tables) {
  if (i < 4) throw std::invalid_argument("q_cardinality: i must be >= 4");
  const uint64_t n_i = primorial(i);
  const uint64_t r_max = (n_i - 1) / nth_prime(i + 1);
  // Exactly i primes are <= p_i, and p_{i+1} <= r_max by Bertrand, so the
  // primes in (p_i, r_max] number pi(r_max) - i.
  return prime_count(r_max, tables) - i;
}

ThresholdCertificate global_threshold(uint64_t k) {
  if (k < 1) throw std::invalid_argument("global_threshold: k must be >= 1");
  ThresholdCertificate cert;
  cert.k = k;
  cert.primorial_cutoff = std::max<uint64_t>(4, k + 1);
  cert.global_bound = 0;
  for (uint64_t b = 1; b < cert.primorial_cutoff; ++b) {
    const uint64_t bound = omega_class_bound(k, b);
    cert.per_class_bounds.emplace_back(b, bound);
    cert.global_bound = std::max(cert.global_bound, bound);
  }
  return cert;
}

std::vector<PrimorialRow> primorial_growth_rows(uint64_t i_max,
                                                const SieveTables& tables) {
  if (i_max < 1) {
    throw std::invalid_argument("primorial_growth_rows: i_max must be >= 1");
  }
  std::vector<PrimorialRow> rows;
  rows.reserve(i_max);
  uint64_t phi = 1;
  for (uint64_t i = 1; i <= i_max; ++i) {
    PrimorialRow row;
    row.i = i;
    row.n_i = primorial(i);
    phi *= nth_prime(i) - 1;
    row.phi = phi;
    row.pi = prime_count(row.n_i, tables);
    row.phi_tilde = phi + i - row.pi;
    if (i >= 4) row.q_cardinality = q_cardinality(i, tables);
    rows.push_back(row);
  }
  return rows;
}

VerificationOutcome verify_primorial_growth(uint64_t i_max,
                                            const SieveTables& tables) {
  const auto rows = primorial_growth_rows(i_max, tables);
  VerificationOutcome out;
  out.claim_id = "primorial_growth";
  out.range = "i in [1, " + std::to_string(i_max) + "]";
  out.passed = true;

  auto fail = [&](const std::string& what) {
    out.passed = false;
    out.counterexample = what;
  };

  const auto q = [&](uint64_t i) { return *rows[i - 1].q_cardinality; };
  const auto pt = [&](uint64_t i) { return rows[i - 1].phi_tilde; };

  for (uint64_t i = 4; i + 1 <= i_max && out.passed; ++i) {
    if (!(q(i) < q(i + 1))) {
      fail("|Q_" + std::to_string(i) + "| = " + std::to_string(q(i)) +
           " not below |Q_" + std::to_string(i + 1) + "| = " +
           std::to_string(q(i + 1)));
    }
  }
  for (uint64_t i = 4; i <= i_max && out.passed; ++i) {
    if (!(q(i) >= i)) {
      fail("|Q_" + std::to_string(i) + "| = " + std::to_string(q(i)) +
           " below " + std::to_string(i));
    }
  }
  for (uint64_t i = 3; i + 1 <= i_max && out.passed; ++i) {
    if (!(pt(i) < pt(i + 1))) {
      fail("phi_tilde(N_" + std::to_string(i) + ") = " + std::to_string(pt(i)) +
           " not below phi_tilde(N_" + std::to_string(i + 1) + ") = " +
           std::to_string(pt(i + 1)));
    }
  }
  for (uint64_t i = 4; i <= i_max && out.passed; ++i) {
    if (!(pt(i) > q(i))) {
      fail("phi_tilde(N_" + std::to_string(i) + ") = " + std::to_string(pt(i)) +
           " not above |Q_" + std::to_string(i) + "| = " + std::to_string(q(i)));
    }
  }
  return out;
}

} // namespace phitilde
