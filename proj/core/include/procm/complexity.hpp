#pragma once

// Bound expressions, per-output cost reports and the time/space bound check.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "procm/causality.hpp"
#include "procm/formats.hpp"
#include "procm/machine.hpp"

namespace procm {

using BigNat = boost::multiprecision::cpp_int;

class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expression over n: constants, n, +, *, b^const, const^b, max(b,b).
class BoundExpr {
 public:
  struct Node;

  BoundExpr() = default;
  static BoundExpr parse(std::string_view text);

  BigNat eval(const BigNat& n) const;
  const std::string& text() const noexcept { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

inline BoundExpr parse_bound(std::string_view text) { return BoundExpr::parse(text); }
inline BigNat eval_bound(const BoundExpr& b, const BigNat& n) { return b.eval(n); }

struct OutputRecord {
  std::size_t ordinal = 0;  // 1-based among outputs
  std::size_t event = 0;    // 1-based position in the run
  std::string channel;
  Word word;
  std::uint64_t time = 0;
  std::uint64_t space = 0;
  SpaceMode mode = SpaceMode::Observed;
  bool fallback = false;  // exact mode was requested but refused
  std::uint64_t input_size = 0;
  std::vector<std::pair<std::string, Word>> inputs;
};

struct CostReport {
  RunStatus status;
  std::size_t steps = 0;
  std::uint64_t total_weight = 0;
  std::vector<OutputRecord> outputs;
};

CostReport cost_report(const Run& r, SpaceMode mode = SpaceMode::Observed, std::size_t exact_limit = 12);

struct Violation {
  std::size_t script = 0;  // position in the suite, 0 for a single report
  std::size_t output = 0;  // output ordinal, 0 for a run failure
  std::string quantity;    // "time", "space" or "run"
  BigNat bound = 0;
  std::uint64_t actual = 0;
  std::string note;
};

struct Verdict {
  std::vector<Violation> violations;
  bool pass() const noexcept { return violations.empty(); }
};

/// Checks t(e) <= f(i(e)) and s(e) <= g(i(e)) for every output record.
Verdict works_in(const CostReport& rep, const BoundExpr& f, const BoundExpr& g);

struct EvidenceOptions {
  SpaceMode mode = SpaceMode::Observed;
  std::size_t exact_limit = 12;
  Scheduler scheduler;
  std::size_t step_limit = 1'000'000;
  bool parallel = true;
};

struct Evidence {
  std::vector<CostReport> reports;
  Verdict verdict;
};

/// Runs the program on every script and aggregates the bound checks. A run
/// that does not complete counts as a violation. Evidence on the tested
/// inputs only.
Evidence class_evidence(std::shared_ptr<const Program> prog, const std::vector<Script>& suite, const BoundExpr& f,
                        const BoundExpr& g, const EvidenceOptions& opts = {});

std::string format_report(const CostReport& rep);
std::string format_verdict(const Verdict& v);
std::string report_json(const std::vector<CostReport>& reports, const Verdict* verdict);

}  // namespace procm
