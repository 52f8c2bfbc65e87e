#pragma once

// Command implementations behind the procm executable. Each command writes
// to the given streams and returns the process exit code.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace procm::cli {

enum Exit : int {
  kOk = 0,
  kFail = 1,  // check: bound violated; compare: not equivalent
  kInputError = 2,
  kRuntimeError = 3,
  kStepLimit = 4,
  kInconclusive = 5,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  std::istream& in;
};

struct ScheduleArgs {
  std::string scheduler = "fifo-tag";
  std::uint64_t seed = 0;
  std::size_t step_limit = 1'000'000;
};

struct RunArgs {
  std::string program;
  std::optional<std::string> script;
  bool interactive = false;
  ScheduleArgs schedule;
};

struct ReportArgs {
  std::string program;
  std::optional<std::string> script;
  std::string space = "observed";
  std::size_t exact_limit = 12;
  bool json = false;
  ScheduleArgs schedule;
};

struct CheckArgs {
  std::string program;
  std::string suite;
  std::string time;
  std::string space;
  std::string space_mode = "observed";
  std::size_t exact_limit = 12;
  bool json = false;
  bool sequential = false;
  ScheduleArgs schedule;
};

struct EncodeArgs {
  std::string kind;
  std::string spec;
  std::optional<std::string> output;
};

struct CompareArgs {
  std::string left;
  std::string right;
  std::optional<std::string> inputs;  // comma-separated words
  std::size_t state_limit = 10'000;
  bool div_sensitive = false;
  std::string in_channel = "i";
  std::string out_channel = "o";
};

struct ExploreArgs {
  std::string program;
  std::optional<std::string> inputs;
  std::size_t state_limit = 10'000;
  std::optional<std::size_t> depth;
};

/// Default exact-space limit: PROCM_EXACT_LIMIT when set and numeric, else 12.
std::size_t default_exact_limit();

int cmd_run(const RunArgs& a, Streams io);
int cmd_report(const ReportArgs& a, Streams io);
int cmd_check(const CheckArgs& a, Streams io);
int cmd_encode(const EncodeArgs& a, Streams io);
int cmd_compare(const CompareArgs& a, Streams io);
int cmd_explore(const ExploreArgs& a, Streams io);

}  // namespace procm::cli
