#include <phitilde/analysis.hpp>
#include <phitilde/bounds.hpp>
#include <phitilde/errors.hpp>
#include <phitilde/phitilde.hpp>
#include <phitilde/sieve.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

using namespace phitilde;

// --- output helpers ---------------------------------------------------------

std::string join_semi(const std::vector<uint64_t>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void print_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << csv_cell(header[i]);
  }
  std::cout << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << csv_cell(row[i]);
    }
    std::cout << '\n';
  }
}

ordered_json outcome_json(const VerificationOutcome& out) {
  ordered_json j;
  j["claim_id"] = out.claim_id;
  j["range"] = out.range;
  j["passed"] = out.passed;
  if (out.counterexample) j["counterexample"] = *out.counterexample;
  if (out.note) j["note"] = *out.note;
  return j;
}

ordered_json certificate_json(const ThresholdCertificate& cert) {
  ordered_json j;
  j["k"] = cert.k;
  j["primorial_cutoff"] = cert.primorial_cutoff;
  j["global_bound"] = cert.global_bound;
  ordered_json classes = ordered_json::array();
  for (const auto& [b, bound] : cert.per_class_bounds) {
    classes.push_back(ordered_json{{"b", b}, {"bound", bound}});
  }
  j["per_class_bounds"] = std::move(classes);
  return j;
}

// One envelope per invocation; `status` is pass/fail for verification
// commands and na for plain computations. Exit code 1 is reserved for
// status fail.
struct Envelope {
  std::string command;
  ordered_json parameters = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::string status = "na";
  // CSV rendering of the same payload.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

int emit(const Envelope& e, const std::string& format) {
  if (format == "csv") {
    print_csv(e.csv_header, e.csv_rows);
  } else {
    ordered_json j;
    j["command"] = e.command;
    j["parameters"] = e.parameters;
    j["result"] = e.result;
    j["status"] = e.status;
    std::cout << j.dump(2) << '\n';
  }
  return e.status == "fail" ? 1 : 0;
}

// --- command payloads -------------------------------------------------------

Envelope run_value(uint64_t n, const SieveTables& tables) {
  const auto r = phi_tilde(n, tables);
  Envelope e;
  e.command = "value";
  e.parameters["n"] = n;
  e.result = {{"n", r.n},
              {"phi", r.phi},
              {"pi", r.pi},
              {"omega", r.omega},
              {"phi_tilde", r.phi_tilde}};
  e.csv_header = {"n", "phi", "pi", "omega", "phi_tilde"};
  e.csv_rows = {{std::to_string(r.n), std::to_string(r.phi),
                 std::to_string(r.pi), std::to_string(r.omega),
                 std::to_string(r.phi_tilde)}};
  return e;
}

Envelope run_enumerate(uint64_t n, const SieveTables& tables) {
  const auto set = enumerate_E(n, tables);
  Envelope e;
  e.command = "enumerate";
  e.parameters["n"] = n;
  e.result = {{"n", set.n},
              {"phi_tilde", set.elements.size()},
              {"elements", set.elements}};
  e.csv_header = {"n", "phi_tilde", "elements"};
  e.csv_rows = {{std::to_string(set.n), std::to_string(set.elements.size()),
                 join_semi(set.elements)}};
  return e;
}

Envelope run_table(uint64_t from, uint64_t to, const SieveTables& tables) {
  if (from < 1 || from > to) {
    throw std::invalid_argument("table: need 1 <= from <= to");
  }
  Envelope e;
  e.command = "table";
  e.parameters["from"] = from;
  e.parameters["to"] = to;
  ordered_json rows = ordered_json::array();
  e.csv_header = {"n", "phi", "pi", "omega", "phi_tilde"};
  for (uint64_t n = from; n <= to; ++n) {
    const auto r = phi_tilde(n, tables);
    rows.push_back(ordered_json{{"n", r.n},
                                {"phi", r.phi},
                                {"pi", r.pi},
                                {"omega", r.omega},
                                {"phi_tilde", r.phi_tilde}});
    e.csv_rows.push_back({std::to_string(r.n), std::to_string(r.phi),
                          std::to_string(r.pi), std::to_string(r.omega),
                          std::to_string(r.phi_tilde)});
  }
  e.result = {{"from", from}, {"to", to}, {"rows", std::move(rows)}};
  return e;
}

Envelope run_preimage(uint64_t k, const SieveTables& tables, int threads) {
  const auto report = preimage(k, tables, threads);
  Envelope e;
  e.command = "preimage";
  e.parameters["k"] = k;
  e.result = {{"k", report.k},
              {"classification", report.classification},
              {"elements", report.elements},
              {"certificate", certificate_json(report.certificate)}};
  e.csv_header = {"k", "classification", "global_bound", "elements"};
  e.csv_rows = {{std::to_string(report.k), report.classification,
                 std::to_string(report.certificate.global_bound),
                 join_semi(report.elements)}};
  return e;
}

Envelope run_smallest(uint64_t max_k, const SieveTables& tables, int threads) {
  const auto table = preimage_table(max_k, tables, threads);
  Envelope e;
  e.command = "smallest";
  e.parameters["max_k"] = max_k;
  ordered_json rows = ordered_json::array();
  e.csv_header = {"k", "n"};
  for (uint64_t k = 1; k <= max_k; ++k) {
    const auto& set = table.sets[k];
    ordered_json row;
    row["k"] = k;
    if (set.empty()) {
      row["n"] = nullptr;
      e.csv_rows.push_back({std::to_string(k), ""});
    } else {
      row["n"] = set.front();
      e.csv_rows.push_back({std::to_string(k), std::to_string(set.front())});
    }
    rows.push_back(std::move(row));
  }
  e.result = {{"max_k", max_k},
              {"scan_bound", table.scan_bound},
              {"rows", std::move(rows)}};
  return e;
}

Envelope run_missing(uint64_t max_k, const SieveTables& tables, int threads) {
  const auto missing = missing_values(max_k, tables, threads);
  Envelope e;
  e.command = "missing";
  e.parameters["max_k"] = max_k;
  e.result = {{"max_k", max_k},
              {"count", missing.size()},
              {"missing", missing}};
  e.csv_header = {"k"};
  for (uint64_t k : missing) e.csv_rows.push_back({std::to_string(k)});
  return e;
}

Envelope run_singletons(uint64_t max_k, const SieveTables& tables,
                        int threads) {
  const auto singletons = singleton_values(max_k, tables, threads);
  Envelope e;
  e.command = "singletons";
  e.parameters["max_k"] = max_k;
  e.result = {{"max_k", max_k},
              {"count", singletons.size()},
              {"singletons", singletons}};
  e.csv_header = {"k"};
  for (uint64_t k : singletons) e.csv_rows.push_back({std::to_string(k)});
  return e;
}

Envelope run_verify_paper(const SieveTables& tables, bool quiet) {
  const auto outcomes = verify_paper_tables(tables);
  Envelope e;
  e.command = "verify-paper";
  size_t passed = 0, errata = 0;
  ordered_json claims = ordered_json::array();
  e.csv_header = {"claim_id", "range", "passed", "counterexample", "note"};
  for (const auto& out : outcomes) {
    claims.push_back(outcome_json(out));
    e.csv_rows.push_back({out.claim_id, out.range,
                          out.passed ? "true" : "false",
                          out.counterexample.value_or(""),
                          out.note.value_or("")});
    passed += out.passed;
    errata += out.note.has_value();
  }
  e.result = {{"total", outcomes.size()},
              {"passed", passed},
              {"errata", errata},
              {"claims", std::move(claims)}};
  e.status = passed == outcomes.size() ? "pass" : "fail";
  if (!quiet) {
    std::cerr << outcomes.size() << " claims, " << passed << " passed, "
              << errata << " errata\n";
  }
  return e;
}

Envelope run_props(const std::string& id, uint64_t limit,
                   const SieveTables& tables) {
  static const std::vector<std::string> all_ids = {
      "squarefree_part", "prime_power_growth", "prime_swap", "primorial_min"};
  std::vector<VerificationOutcome> checks;
  if (id == "all") {
    for (const auto& one : all_ids) {
      checks.push_back(check_property(one, limit, tables));
    }
  } else {
    checks.push_back(check_property(id, limit, tables));
  }

  Envelope e;
  e.command = "props";
  e.parameters["id"] = id;
  e.parameters["limit"] = limit;
  size_t passed = 0;
  ordered_json items = ordered_json::array();
  e.csv_header = {"claim_id", "range", "passed", "counterexample"};
  for (const auto& out : checks) {
    items.push_back(outcome_json(out));
    e.csv_rows.push_back({out.claim_id, out.range,
                          out.passed ? "true" : "false",
                          out.counterexample.value_or("")});
    passed += out.passed;
  }
  e.result = {{"checks", std::move(items)}};
  e.status = passed == checks.size() ? "pass" : "fail";
  return e;
}

Envelope run_primorial_growth(uint64_t max_i, const SieveTables& tables) {
  const auto rows = primorial_growth_rows(max_i, tables);
  const auto outcome = verify_primorial_growth(max_i, tables);
  Envelope e;
  e.command = "primorial-growth";
  e.parameters["max_i"] = max_i;
  ordered_json jrows = ordered_json::array();
  e.csv_header = {"i", "primorial", "phi", "pi", "phi_tilde", "q_size"};
  for (const auto& row : rows) {
    ordered_json jr;
    jr["i"] = row.i;
    jr["primorial"] = row.n_i;
    jr["phi"] = row.phi;
    jr["pi"] = row.pi;
    jr["phi_tilde"] = row.phi_tilde;
    if (row.q_cardinality) {
      jr["q_size"] = *row.q_cardinality;
    } else {
      jr["q_size"] = nullptr;
    }
    jrows.push_back(std::move(jr));
    e.csv_rows.push_back(
        {std::to_string(row.i), std::to_string(row.n_i),
         std::to_string(row.phi), std::to_string(row.pi),
         std::to_string(row.phi_tilde),
         row.q_cardinality ? std::to_string(*row.q_cardinality)
                           : std::string()});
  }
  e.result = {{"max_i", max_i},
              {"rows", std::move(jrows)},
              {"outcome", outcome_json(outcome)}};
  e.status = outcome.passed ? "pass" : "fail";
  return e;
}

Envelope run_conjecture_scan(uint64_t max_k, const SieveTables& tables,
                             int threads) {
  const auto report = conjecture_scan(max_k, tables, threads);
  Envelope e;
  e.command = "conjecture-scan";
  e.parameters["max_k"] = max_k;
  e.result = {{"max_k", report.max_k},
              {"scan_bound", report.scan_bound},
              {"count", report.missing_count},
              {"density", report.density},
              {"missing", report.missing}};
  std::ostringstream density;
  density << report.density;
  e.csv_header = {"max_k", "scan_bound", "count", "density", "missing"};
  e.csv_rows = {{std::to_string(report.max_k),
                 std::to_string(report.scan_bound),
                 std::to_string(report.missing_count), density.str(),
                 join_semi(report.missing)}};
  return e;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"phi-tilde: coprime non-prime counting and exact preimages"};
  app.require_subcommand(1);

  std::string format = "json";
  uint64_t sieve_limit = kDefaultSieveLimit;
  bool quiet = false;
  int threads = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--sieve-limit", sieve_limit, "Sieve table size")
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress diagnostics on standard error");
  app.add_option("--threads", threads, "Cap on worker threads (0 = default)");

  uint64_t n = 0, from = 0, to = 0, k = 0, max_k = 0, max_i = 0, limit = 0;
  std::string prop_id;

  // Global flags stay valid after the subcommand name.
  app.fallthrough();

  auto* cmd_value = app.add_subcommand("value", "phi_tilde(n) with phi/pi/omega");
  cmd_value->add_option("n", n, "Argument")->required();

  auto* cmd_enum = app.add_subcommand("enumerate", "The set E_n itself");
  cmd_enum->add_option("n", n, "Argument")->required();

  auto* cmd_table = app.add_subcommand("table", "Rows of values for a range");
  cmd_table->add_option("from", from, "First n")->required();
  cmd_table->add_option("to", to, "Last n")->required();

  auto* cmd_pre = app.add_subcommand("preimage", "Complete s(k) with certificate");
  cmd_pre->add_option("k", k, "Target value")->required();

  auto* cmd_small = app.add_subcommand("smallest", "Smallest member of s(k) per k");
  cmd_small->add_option("--max-k", max_k, "Largest k")->required();

  auto* cmd_missing = app.add_subcommand("missing", "k with s(k) empty");
  cmd_missing->add_option("--max-k", max_k, "Largest k")->required();

  auto* cmd_single = app.add_subcommand("singletons", "k with |s(k)| = 1");
  cmd_single->add_option("--max-k", max_k, "Largest k")->required();

  auto* cmd_verify =
      app.add_subcommand("verify-paper", "Re-derive every bundled reference claim");

  auto* cmd_props = app.add_subcommand("props", "Structural property checks");
  cmd_props
      ->add_option("--id", prop_id, "Property id or 'all'")
      ->required()
      ->check(CLI::IsMember({"squarefree_part", "prime_power_growth",
                             "prime_swap", "primorial_min", "all"}));
  cmd_props->add_option("--limit", limit, "Scan limit")->required();

  auto* cmd_prim = app.add_subcommand("primorial-growth",
                                      "phi_tilde at primorials and |Q_i|");
  cmd_prim->add_option("--max-i", max_i, "Largest primorial index")->required();

  auto* cmd_conj = app.add_subcommand("conjecture-scan",
                                      "Missing-value density up to max k");
  cmd_conj->add_option("--max-k", max_k, "Largest k")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    const auto tables = build_sieve(sieve_limit);
    Envelope envelope;
    if (*cmd_value) {
      envelope = run_value(n, tables);
    } else if (*cmd_enum) {
      envelope = run_enumerate(n, tables);
    } else if (*cmd_table) {
      envelope = run_table(from, to, tables);
    } else if (*cmd_pre) {
      envelope = run_preimage(k, tables, threads);
    } else if (*cmd_small) {
      envelope = run_smallest(max_k, tables, threads);
    } else if (*cmd_missing) {
      envelope = run_missing(max_k, tables, threads);
    } else if (*cmd_single) {
      envelope = run_singletons(max_k, tables, threads);
    } else if (*cmd_verify) {
      envelope = run_verify_paper(tables, quiet);
    } else if (*cmd_props) {
      envelope = run_props(prop_id, limit, tables);
    } else if (*cmd_prim) {
      envelope = run_primorial_growth(max_i, tables);
    } else {
      envelope = run_conjecture_scan(max_k, tables, threads);
    }
    return emit(envelope, format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    // An internal invariant broke; that is a failed verification, not a
    // usage problem.
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
