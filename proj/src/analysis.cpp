#include <phitilde/analysis.hpp>

#include <phitilde/errors.hpp>
#include <phitilde/golden.hpp>
#include <phitilde/phitilde.hpp>
#include <phitilde/scan.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace phitilde {

namespace {

uint64_t value(uint64_t n, const SieveTables& tables) {
  return tables.phi[n] + tables.omega[n] - tables.pi_prefix[n];
}

uint64_t radical(uint64_t n, const SieveTables& tables) {
  uint64_t rad = 1;
  while (n > 1) {
    const uint64_t p = tables.spf[n];
    rad *= p;
    while (n % p == 0) n /= p;
  }
  return rad;
}

std::string join(const std::vector<uint64_t>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return out.str();
}

} // namespace

std::string classify(size_t count) {
  if (count == 0) return "empty";
  if (count == 1) return "singleton";
  return "multiple";
}

PreimageTable preimage_table(uint64_t max_k, const SieveTables& tables,
                             int threads) {
  if (max_k < 1) throw std::invalid_argument("preimage_table: max_k must be >= 1");

  PreimageTable table;
  table.max_k = max_k;
  table.certificates.resize(max_k + 1);
  for (uint64_t k = 1; k <= max_k; ++k) {
    table.certificates[k] = global_threshold(k);
  }
  table.scan_bound = table.certificates[max_k].global_bound;

  auto buckets = scan_preimages(table.scan_bound, max_k, tables, threads);
  table.sets = std::move(buckets.by_k);

  // A bucket element above its own certificate bound would contradict the
  // finiteness argument; that can only be an implementation bug.
  for (uint64_t k = 1; k <= max_k; ++k) {
    const auto& set = table.sets[k];
    if (!set.empty() && set.back() > table.certificates[k].global_bound) {
      throw std::logic_error(
          "preimage_table: " + std::to_string(set.back()) +
          " lies beyond the certified bound for k = " + std::to_string(k));
    }
  }
  return table;
}

PreimageReport preimage(uint64_t k, const SieveTables& tables, int threads) {
  auto table = preimage_table(k, tables, threads);
  PreimageReport report;
  report.k = k;
  report.certificate = std::move(table.certificates[k]);
  report.elements = std::move(table.sets[k]);
  report.classification = classify(report.elements.size());
  return report;
}

std::optional<uint64_t> smallest_preimage(uint64_t k,
                                          const SieveTables& tables) {
  const auto report = preimage(k, tables);
  if (report.elements.empty()) return std::nullopt;
  return report.elements.front();
}

std::vector<uint64_t> missing_values(uint64_t max_k, const SieveTables& tables,
                                     int threads) {
  const auto table = preimage_table(max_k, tables, threads);
  std::vector<uint64_t> missing;
  for (uint64_t k = 1; k <= max_k; ++k) {
    if (table.sets[k].empty()) missing.push_back(k);
  }
  return missing;
}

std::vector<uint64_t> singleton_values(uint64_t max_k,
                                       const SieveTables& tables,
                                       int threads) {
  const auto table = preimage_table(max_k, tables, threads);
  std::vector<uint64_t> singletons;
  for (uint64_t k = 1; k <= max_k; ++k) {
    if (table.sets[k].size() == 1) singletons.push_back(k);
  }
  return singletons;
}

ConjectureScanReport conjecture_scan(uint64_t max_k, const SieveTables& tables,
                                     int threads) {
  const auto table = preimage_table(max_k, tables, threads);
  ConjectureScanReport report;
  report.max_k = max_k;
  report.scan_bound = table.scan_bound;
  for (uint64_t k = 1; k <= max_k; ++k) {
    if (table.sets[k].empty()) report.missing.push_back(k);
  }
  report.missing_count = report.missing.size();
  report.density = static_cast<double>(report.missing_count) /
                   static_cast<double>(max_k);
  return report;
}

namespace {

VerificationOutcome check_squarefree_part(uint64_t limit,
                                          const SieveTables& tables) {
  VerificationOutcome out;
  out.claim_id = "squarefree_part";
  out.range = "n in [1, " + std::to_string(limit) + "]";
  out.passed = true;
  for (uint64_t n = 1; n <= limit; ++n) {
    const uint64_t rad = radical(n, tables);
    if (value(n, tables) < value(rad, tables)) {
      out.passed = false;
      out.counterexample = "n = " + std::to_string(n) + ": phi_tilde " +
                           std::to_string(value(n, tables)) + " below " +
                           std::to_string(value(rad, tables)) + " at radical " +
                           std::to_string(rad);
      break;
    }
  }
  return out;
}

VerificationOutcome check_prime_power_growth(uint64_t limit,
                                             const SieveTables& tables) {
  VerificationOutcome out;
  out.claim_id = "prime_power_growth";
  out.range = "n >= 3, n^(j+1) <= " + std::to_string(limit);
  out.passed = true;
  for (uint64_t n = 3; n * n <= limit && out.passed; ++n) {
    uint64_t cur = n;
    while (cur <= limit / n) {
      const uint64_t next = cur * n;
      if (value(cur, tables) >= value(next, tables)) {
        out.passed = false;
        out.counterexample =
            "phi_tilde(" + std::to_string(cur) + ") = " +
            std::to_string(value(cur, tables)) + " not below phi_tilde(" +
            std::to_string(next) + ") = " + std::to_string(value(next, tables));
        break;
      }
      cur = next;
    }
  }
  return out;
}

VerificationOutcome check_prime_swap(uint64_t limit,
                                     const SieveTables& tables) {
  VerificationOutcome out;
  out.claim_id = "prime_swap";
  out.range = "primes p < q, gcd(pq, n) = 1, n*q <= " + std::to_string(limit);
  out.passed = true;
  const auto primes = primes_up_to(limit, tables);
  for (uint64_t n = 1; n <= limit / 2 && out.passed; ++n) {
    for (size_t jq = 1; jq < primes.size(); ++jq) {
      const uint64_t q = primes[jq];
      if (n * q > limit) break;
      if (n % q == 0) continue;
      for (size_t jp = 0; jp < jq; ++jp) {
        const uint64_t p = primes[jp];
        if (n % p == 0) continue;
        if (value(n * p, tables) > value(n * q, tables)) {
          out.passed = false;
          out.counterexample =
              "n = " + std::to_string(n) + ", p = " + std::to_string(p) +
              ", q = " + std::to_string(q) + ": phi_tilde(" +
              std::to_string(n * p) + ") = " +
              std::to_string(value(n * p, tables)) + " above phi_tilde(" +
              std::to_string(n * q) + ") = " +
              std::to_string(value(n * q, tables));
          break;
        }
      }
      if (!out.passed) break;
    }
  }
  return out;
}

VerificationOutcome check_primorial_min(uint64_t limit,
                                        const SieveTables& tables) {
  VerificationOutcome out;
  out.claim_id = "primorial_min";
  out.range = "a in [2, " + std::to_string(limit) + "]";
  out.passed = true;

  // phi_tilde at each primorial within range; N_omega(a) <= a always, so
  // indexing by omega(a) stays inside this table.
  std::vector<uint64_t> pt_primorial(1, 0);
  for (uint64_t i = 1;; ++i) {
    const uint64_t n_i = primorial(i);
    if (n_i > limit) break;
    pt_primorial.push_back(value(n_i, tables));
  }

  for (uint64_t a = 2; a <= limit; ++a) {
    const uint32_t i = tables.omega[a];
    if (pt_primorial[i] > value(a, tables)) {
      out.passed = false;
      out.counterexample = "a = " + std::to_string(a) + " (omega " +
                           std::to_string(i) + "): phi_tilde(N_" +
                           std::to_string(i) + ") = " +
                           std::to_string(pt_primorial[i]) +
                           " above phi_tilde(a) = " +
                           std::to_string(value(a, tables));
      break;
    }
  }
  return out;
}

} // namespace

VerificationOutcome check_property(const std::string& id, uint64_t limit,
                                   const SieveTables& tables) {
  if (limit < 1 || limit > tables.limit) {
    throw std::out_of_range("check_property: limit " + std::to_string(limit) +
                            " outside [1, " + std::to_string(tables.limit) +
                            "]");
  }
  if (id == "squarefree_part") return check_squarefree_part(limit, tables);
  if (id == "prime_power_growth") return check_prime_power_growth(limit, tables);
  if (id == "prime_swap") return check_prime_swap(limit, tables);
  if (id == "primorial_min") return check_primorial_min(limit, tables);
  throw std::invalid_argument("check_property: unknown id '" + id + "'");
}

namespace {

std::map<uint64_t, std::vector<uint64_t>> by_numeric_key(
    const std::vector<GoldenLine>& lines, const std::string& path) {
  std::map<uint64_t, std::vector<uint64_t>> map;
  for (const auto& line : lines) {
    try {
      map[std::stoull(line.key)] = line.values;
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": non-numeric key '" + line.key + "'");
    }
  }
  return map;
}

const std::vector<uint64_t>& named_line(const std::vector<GoldenLine>& lines,
                                        const std::string& key,
                                        const std::string& path) {
  for (const auto& line : lines) {
    if (line.key == key) return line.values;
  }
  throw std::runtime_error(path + ": missing required key '" + key + "'");
}

VerificationOutcome compare_sets(std::string claim_id, std::string range,
                                 const std::vector<uint64_t>& expected,
                                 const std::vector<uint64_t>& actual) {
  VerificationOutcome out;
  out.claim_id = std::move(claim_id);
  out.range = std::move(range);
  out.passed = expected == actual;
  if (!out.passed) {
    out.counterexample =
        "expected {" + join(expected) + "} got {" + join(actual) + "}";
  }
  return out;
}

} // namespace

std::vector<VerificationOutcome> verify_paper_tables(
    const SieveTables& tables, const std::string& data_dir) {
  if (tables.limit < 10'000) {
    throw std::invalid_argument(
        "verify_paper_tables: tables.limit must be at least 10000");
  }
  const std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
  const std::string first_twenty_path = dir + "/first_twenty.txt";
  const std::string smallest_path = dir + "/smallest_n.txt";
  const std::string sets_path = dir + "/preimage_sets.txt";
  const std::string classes_path = dir + "/classes_k100.txt";

  const auto first_twenty =
      by_numeric_key(load_golden_file(first_twenty_path), first_twenty_path);
  const auto smallest =
      by_numeric_key(load_golden_file(smallest_path), smallest_path);
  const auto obs_sets = by_numeric_key(load_golden_file(sets_path), sets_path);
  const auto classes = load_golden_file(classes_path);

  std::vector<VerificationOutcome> outcomes;
  outcomes.reserve(2 + first_twenty.size() + smallest.size() + obs_sets.size());

  // E_n and phi_tilde(n) for the first twenty n.
  for (const auto& [n, expected] : first_twenty) {
    const auto computed = enumerate_E(n, tables);
    auto out = compare_sets("first20_n" + std::to_string(n),
                            "n = " + std::to_string(n), expected,
                            computed.elements);
    const uint64_t pt = phi_tilde(n, tables).phi_tilde;
    if (out.passed && pt != expected.size()) {
      out.passed = false;
      out.counterexample = "phi_tilde = " + std::to_string(pt) +
                           " but the reference set has " +
                           std::to_string(expected.size()) + " elements";
    }
    outcomes.push_back(std::move(out));
  }

  const auto table = preimage_table(100, tables);

  // Smallest preimage per k; an empty reference line means none exists.
  for (const auto& [k, expected] : smallest) {
    VerificationOutcome out;
    out.claim_id = "table_k" + std::to_string(k);
    out.range = "k = " + std::to_string(k);
    const auto& set = table.sets[k];
    const std::optional<uint64_t> got =
        set.empty() ? std::nullopt : std::optional<uint64_t>(set.front());
    const std::optional<uint64_t> want =
        expected.empty() ? std::nullopt
                         : std::optional<uint64_t>(expected.front());
    out.passed = got == want;
    if (!out.passed) {
      auto show = [](const std::optional<uint64_t>& v) {
        return v ? std::to_string(*v) : std::string("none");
      };
      out.counterexample = "expected " + show(want) + " got " + show(got);
    }
    outcomes.push_back(std::move(out));
  }

  // Full preimage sets. The k = 1 reference row omits n = 1 although
  // phi_tilde(1) = 1; matching it modulo that one element passes with an
  // erratum note instead of failing.
  for (const auto& [k, expected] : obs_sets) {
    auto out = compare_sets("obs_" + std::to_string(k),
                            "k = " + std::to_string(k), expected,
                            table.sets[k]);
    if (!out.passed && k == 1) {
      std::vector<uint64_t> with_one;
      with_one.push_back(1);
      with_one.insert(with_one.end(), expected.begin(), expected.end());
      std::sort(with_one.begin(), with_one.end());
      if (with_one == table.sets[k]) {
        out.passed = true;
        out.counterexample.reset();
        out.note = "reference row omits n = 1, but phi_tilde(1) = 1; "
                   "treated as a known erratum";
      }
    }
    outcomes.push_back(std::move(out));
  }

  std::vector<uint64_t> missing, singletons;
  for (uint64_t k = 1; k <= 100; ++k) {
    if (table.sets[k].empty()) missing.push_back(k);
    if (table.sets[k].size() == 1) singletons.push_back(k);
  }
  outcomes.push_back(compare_sets("lemma_empty_k100", "k <= 100",
                                  named_line(classes, "empty", classes_path),
                                  missing));
  outcomes.push_back(
      compare_sets("singleton_k100", "k <= 100",
                   named_line(classes, "singleton", classes_path), singletons));
  return outcomes;
}

} // namespace phitilde
