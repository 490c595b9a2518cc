#include "doctest.h"

#include <stdexcept>

#include <phitilde/bounds.hpp>
#include <phitilde/phitilde.hpp>

#include "../test_support.hpp"

#include <map>

using namespace phitilde;
using test::tables_1e6;

TEST_CASE("triangular_index picks the first l with l(l+1)/2 above k") {
  CHECK(triangular_index(0) == 1);
  CHECK(triangular_index(1) == 2);
  CHECK(triangular_index(2) == 2);
  CHECK(triangular_index(3) == 3);
  CHECK(triangular_index(4) == 3);
  CHECK(triangular_index(100) == 14);
  CHECK(triangular_index(500) == 32);
  for (uint64_t k = 0; k <= 600; ++k) {
    const uint64_t l = triangular_index(k);
    CHECK(l * (l + 1) / 2 > k);
    if (l > 1) CHECK((l - 1) * l / 2 <= k);
  }
}

TEST_CASE("omega class bounds hit the pinned values") {
  CHECK(omega_class_bound(0, 1) == 25);  // p_3^2
  CHECK(omega_class_bound(1, 1) == 49);  // p_4^2
  CHECK(omega_class_bound(4, 2) == 169); // p_6^2
  CHECK_THROWS_AS(omega_class_bound(1, 0), std::invalid_argument);
}

TEST_CASE("omega class bounds really cap their classes") {
  const auto& t = tables_1e6();
  // For each (k, b) find the largest n <= 10^6 with omega(n) = b and
  // phi_tilde(n) = k; it must sit at or below B(k, b). The tables reach
  // far beyond every bound involved (max is B(30, 5) = 43^2 = 1849).
  std::map<std::pair<uint64_t, uint64_t>, uint64_t> largest;
  for (uint64_t n = 1; n <= t.limit; ++n) {
    const uint64_t k = t.phi[n] + t.omega[n] - t.pi_prefix[n];
    const uint64_t b = t.omega[n];
    if (k <= 30 && b >= 1 && b <= 5) largest[{k, b}] = n;
  }
  for (uint64_t k = 1; k <= 30; ++k) {
    for (uint64_t b = 1; b <= 5; ++b) {
      const auto it = largest.find({k, b});
      if (it == largest.end()) continue;
      CHECK(it->second <= omega_class_bound(k, b));
    }
  }
}

TEST_CASE("Q_4 is the anchor set") {
  const auto& t = tables_1e6();
  const auto q4 = compute_Q(4, t);
  CHECK(q4.cardinality == 4);
  CHECK(q4.q_elements == std::vector<uint64_t>{11, 13, 17, 19});
}

TEST_CASE("Q sets grow and always contain the next prime") {
  const auto& t = tables_1e6();
  uint64_t previous = 0;
  for (uint64_t i = 4; i <= 7; ++i) {
    const auto q = compute_Q(i, t);
    CHECK(q.cardinality == q.q_elements.size());
    CHECK(q.cardinality > previous);
    CHECK(q.cardinality >= i);
    previous = q.cardinality;

    // The next prime always qualifies: p_{i+1}^2 < N_i for i >= 4.
    const uint64_t next_prime = nth_prime(i + 1);
    bool found = false;
    for (uint64_t r : q.q_elements) found |= (r == next_prime);
    CHECK(found);

    // Every element is a prime above p_i with r * p_{i+1} < N_i.
    for (uint64_t r : q.q_elements) {
      CHECK(t.is_prime[r] == 1);
      CHECK(r > nth_prime(i));
      CHECK(r * nth_prime(i + 1) < primorial(i));
    }
  }
}

TEST_CASE("q_cardinality matches enumeration and reaches further") {
  const auto& t = tables_1e6();
  for (uint64_t i = 4; i <= 7; ++i) {
    CHECK(q_cardinality(i, t) == compute_Q(i, t).cardinality);
  }
  CHECK(q_cardinality(5, t) == 35);
  CHECK(q_cardinality(8, t) == 35515);
  CHECK(q_cardinality(9, t) == 520445); // needs pi at 7692857, beyond tables
  CHECK_THROWS_AS(compute_Q(3, t), std::invalid_argument);
  CHECK_THROWS_AS(compute_Q(9, t), std::out_of_range);
}

TEST_CASE("global thresholds carry the pinned bounds") {
  const auto c1 = global_threshold(1);
  CHECK(c1.primorial_cutoff == 4);
  CHECK(c1.per_class_bounds.size() == 3);
  CHECK(c1.global_bound == 169);

  CHECK(global_threshold(16).global_bound == 6889);
  CHECK(global_threshold(20).global_bound == 10609);
  CHECK(global_threshold(60).global_bound == 128881);
  CHECK(global_threshold(100).global_bound == 398161); // 631^2
  CHECK(global_threshold(500).global_bound == 14799409);
  CHECK_THROWS_AS(global_threshold(0), std::invalid_argument);
}

TEST_CASE("certificates are internally consistent and monotone") {
  uint64_t previous = 0;
  for (uint64_t k = 1; k <= 120; ++k) {
    const auto cert = global_threshold(k);
    CHECK(cert.k == k);
    CHECK(cert.primorial_cutoff == std::max<uint64_t>(4, k + 1));
    CHECK(cert.per_class_bounds.size() == cert.primorial_cutoff - 1);
    uint64_t max_bound = 0;
    for (size_t idx = 0; idx < cert.per_class_bounds.size(); ++idx) {
      const auto& [b, bound] = cert.per_class_bounds[idx];
      CHECK(b == idx + 1);
      CHECK(bound == omega_class_bound(k, b));
      max_bound = std::max(max_bound, bound);
    }
    CHECK(cert.global_bound == max_bound);
    CHECK(cert.global_bound >= previous);
    previous = cert.global_bound;
  }
}

TEST_CASE("primorial growth rows carry the pinned chain") {
  const auto& t = tables_1e6();
  const auto rows = primorial_growth_rows(7, t);
  REQUIRE(rows.size() == 7);

  const uint64_t expected_phi[] = {1, 2, 8, 48, 480, 5760, 92160};
  const uint64_t expected_pi[] = {1, 3, 10, 46, 343, 3248, 42331};
  const uint64_t expected_pt[] = {1, 1, 1, 6, 142, 2518, 49836};
  for (size_t idx = 0; idx < 7; ++idx) {
    CHECK(rows[idx].i == idx + 1);
    CHECK(rows[idx].n_i == primorial(idx + 1));
    CHECK(rows[idx].phi == expected_phi[idx]);
    CHECK(rows[idx].pi == expected_pi[idx]);
    CHECK(rows[idx].phi_tilde == expected_pt[idx]);
  }
  CHECK(!rows[2].q_cardinality.has_value());
  CHECK(rows[3].q_cardinality == 4);
  CHECK(rows[4].q_cardinality == 35);
  CHECK(rows[5].q_cardinality == 268);
  CHECK(rows[6].q_cardinality == 2940);
}

TEST_CASE("verify_primorial_growth passes up to i = 8") {
  const auto& t = tables_1e6();
  for (uint64_t i_max : {uint64_t{3}, uint64_t{4}, uint64_t{8}}) {
    const auto out = verify_primorial_growth(i_max, t);
    CHECK(out.passed);
    CHECK(!out.counterexample.has_value());
  }
}

TEST_CASE("the primorial index M_n stays within max(4, n)") {
  const auto& t = tables_1e6();
  const auto rows = primorial_growth_rows(8, t);
  for (uint64_t n = 1; n <= 10; ++n) {
    // Smallest M with phi_tilde(N_j) > n for every j >= M. phi_tilde is
    // increasing from j = 3 on, so the first adequate j past 2 works.
    uint64_t m = 0;
    for (uint64_t j = rows.size(); j >= 1; --j) {
      if (rows[j - 1].phi_tilde <= n) {
        m = j + 1;
        break;
      }
    }
    REQUIRE(m > 0);
    CHECK(m <= std::max<uint64_t>(4, n));
    CHECK(m == (n < 6 ? 4 : 5));
  }
}
