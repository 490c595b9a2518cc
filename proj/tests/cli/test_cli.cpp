#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

#ifndef CLI_BIN
#error "CLI_BIN must point at the phitilde binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stderr folded into stdout so usage errors are capturable.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                        : -1;
  return result;
}

nlohmann::json parse_json(const RunResult& r) {
  CAPTURE(r.output);
  REQUIRE(r.exit_code == 0);
  return nlohmann::json::parse(r.output);
}

}  // namespace

TEST_CASE("value reports the record for a single n") {
  const auto doc = parse_json(run_cli("value 17"));
  CHECK(doc["command"] == "value");
  CHECK(doc["result"]["n"] == 17);
  CHECK(doc["result"]["phi"] == 16);
  CHECK(doc["result"]["pi"] == 7);
  CHECK(doc["result"]["omega"] == 1);
  CHECK(doc["result"]["phi_tilde"] == 10);
  CHECK(doc["status"] == "na");
}

TEST_CASE("enumerate lists the coprime composite set") {
  const auto doc = parse_json(run_cli("enumerate 11"));
  const std::vector<int> expected{1, 4, 6, 8, 9, 10};
  CHECK(doc["result"]["elements"].get<std::vector<int>>() == expected);
  CHECK(doc["result"]["phi_tilde"] == 6);
}

TEST_CASE("table emits CSV rows with the fixed header") {
  const auto r = run_cli("table 1 5 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("n,phi,pi,omega,phi_tilde\n") == 0);
  CHECK(r.output.find("1,1,0,0,1\n") != std::string::npos);
  CHECK(r.output.find("5,4,3,1,2\n") != std::string::npos);
}

TEST_CASE("preimage of an unattained value is empty yet exits zero") {
  const auto doc = parse_json(run_cli("preimage 13"));
  CHECK(doc["result"]["elements"].empty());
  CHECK(doc["result"]["classification"] == "empty");
}

TEST_CASE("preimage of 16 is the lone square 144") {
  const auto doc = parse_json(run_cli("preimage 16"));
  CHECK(doc["result"]["elements"].get<std::vector<int>>() ==
        std::vector<int>{144});
  CHECK(doc["result"]["classification"] == "singleton");
  CHECK(doc["result"]["certificate"]["global_bound"] == 6889);
}

TEST_CASE("smallest emits empty CSV cells for unattained values") {
  const auto r = run_cli("smallest --max-k 12 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("9,102\n") != std::string::npos);
  CHECK(r.output.find("12,25\n") != std::string::npos);
}

TEST_CASE("missing lists the gaps up to 100") {
  const auto doc = parse_json(run_cli("missing --max-k 100"));
  CHECK(doc["result"]["missing"].get<std::vector<int>>() ==
        std::vector<int>{13, 31, 70});
  CHECK(doc["result"]["count"] == 3);
}

TEST_CASE("verify-paper passes with a single erratum") {
  const auto r = run_cli("verify-paper --quiet");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["status"] == "pass");
  CHECK(doc["result"]["total"] == 101);
  CHECK(doc["result"]["passed"] == 101);
  CHECK(doc["result"]["errata"] == 1);
}

TEST_CASE("props runs a named property check") {
  const auto doc = parse_json(run_cli("props --id prime_power_growth --limit 1000"));
  CHECK(doc["status"] == "pass");
  CHECK(doc["result"]["checks"].size() == 1);
  CHECK(doc["result"]["checks"][0]["passed"] == true);
}

TEST_CASE("primorial-growth verifies the chain and reports rows") {
  const auto doc = parse_json(run_cli("primorial-growth --max-i 5"));
  CHECK(doc["status"] == "pass");
  const auto& rows = doc["result"]["rows"];
  REQUIRE(rows.size() == 5);
  CHECK(rows[3]["phi_tilde"] == 6);
  CHECK(rows[3]["q_size"] == 4);
  CHECK(rows[4]["q_size"] == 35);
  CHECK(rows[2]["q_size"].is_null());
}

TEST_CASE("conjecture-scan reports missing-value statistics") {
  const auto doc = parse_json(run_cli("conjecture-scan --max-k 100"));
  CHECK(doc["result"]["count"] == 3);
  CHECK(doc["result"]["missing"].get<std::vector<int>>() ==
        std::vector<int>{13, 31, 70});
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  const auto a = run_cli("missing --max-k 100 --threads 1");
  const auto b = run_cli("missing --max-k 100 --threads 2");
  const auto c = run_cli("missing --max-k 100 --threads 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output == c.output);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--no-such-flag").exit_code == 2);
  CHECK(run_cli("table 5 1").exit_code == 2);
  CHECK(run_cli("value 0").exit_code == 2);
  CHECK(run_cli("value 10 --format xml").exit_code == 2);
  CHECK(run_cli("value 2000000 --sieve-limit 1000000").exit_code == 2);
}

TEST_CASE("help exits zero") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("preimage --help").exit_code == 0);
}
