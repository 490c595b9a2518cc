#pragma once

#include <optional>
#include <string>

namespace phitilde {

// One machine-checked claim: what was tested, over what range, and the first
// counterexample when it failed. `note` carries annotations that do not count
// as failures, e.g. a known erratum in the reference values.
struct VerificationOutcome {
  std::string claim_id;
  std::string range;
  bool passed = false;
  std::optional<std::string> counterexample;
  std::optional<std::string> note;
};

} // namespace phitilde
