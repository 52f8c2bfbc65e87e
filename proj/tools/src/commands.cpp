#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "procm/behavior.hpp"
#include "procm/complexity.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/parser.hpp"
#include "procm/printer.hpp"

namespace procm::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs a command body; malformed files and options map to exit code 2.
int guarded(Streams io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const EvalError& e) {
    io.err << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

std::shared_ptr<const Program> load_program(const std::string& path) {
  try {
    return std::make_shared<const Program>(parse_program(read_file(path)));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Script load_script(const std::optional<std::string>& path) {
  if (!path) return {};
  try {
    return parse_script(read_file(*path));
  } catch (const FormatError& e) {
    throw UsageError(*path + ": " + e.what());
  }
}

Scheduler make_scheduler(const ScheduleArgs& s) {
  if (s.scheduler == "fifo-tag") return Scheduler::fifo_tag();
  if (s.scheduler == "random") return Scheduler::random(s.seed);
  throw UsageError("unknown scheduler '" + s.scheduler + "' (fifo-tag|random)");
}

SpaceMode make_mode(const std::string& m) {
  if (m == "observed") return SpaceMode::Observed;
  if (m == "exact") return SpaceMode::Exact;
  throw UsageError("unknown space mode '" + m + "' (observed|exact)");
}

std::vector<Word> parse_word_list(const std::string& list) {
  std::vector<Word> words;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = list.find(',', start);
    std::string token = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    words.push_back(token.empty() ? Word() : parse_word_token(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return words;
}

int exit_for(const RunStatus& s) {
  switch (s.kind) {
    case RunStatus::Kind::Completed: return kOk;
    case RunStatus::Kind::StepLimit: return kStepLimit;
    case RunStatus::Kind::RuntimeError: return kRuntimeError;
  }
  return kRuntimeError;
}

// Prompts on the error stream so that the output stream stays a clean trace.
InteractiveInput::Source prompter(Streams io) {
  return [io](const std::string& channel) -> std::optional<Word> {
    while (true) {
      io.err << "input on " << channel << " (bits or \"\", EOF closes)> " << std::flush;
      std::string line;
      if (!std::getline(io.in, line)) {
        io.err << "\n";
        return std::nullopt;
      }
      auto tokens = split_tokens(line);
      if (tokens.empty()) return Word();
      try {
        return parse_word_token(tokens.front());
      } catch (const std::exception& e) {
        io.err << "error: " << e.what() << "\n";
      }
    }
  };
}

void print_trace(const Run& r, std::ostream& out) {
  for (const auto& rec : r.steps) {
    if (rec.op == Op::Inp) out << "in " << rec.action.channel << " " << rec.action.word.quoted() << "\n";
    if (rec.op == Op::Out) out << "out " << rec.action.channel << " " << rec.action.word.quoted() << "\n";
  }
  std::uint64_t weight = 0;
  for (const auto& rec : r.steps) weight += rec.weight;
  out << "status " << r.status.describe() << " steps=" << r.steps.size() << " weight=" << weight << "\n";
}

bool is_funtable_path(const std::string& path) { return fs::path(path).extension() == ".fun"; }

std::string edge_label(const Action& a, const std::set<std::string>& inputs) {
  if (!a.visible) return "tau";
  return a.channel + (inputs.count(a.channel) ? "?" : "!") + a.word.quoted();
}

}  // namespace

std::size_t default_exact_limit() {
  if (const char* v = std::getenv("PROCM_EXACT_LIMIT")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0') return n;
  }
  return 12;
}

int cmd_run(const RunArgs& a, Streams io) {
  return guarded(io, [&] {
    auto prog = load_program(a.program);
    Scheduler sched = make_scheduler(a.schedule);
    Run r;
    if (a.interactive) {
      InteractiveInput in(prompter(io));
      r = run(prog, in, sched, a.schedule.step_limit);
    } else {
      ScriptedInput in(load_script(a.script));
      r = run(prog, in, sched, a.schedule.step_limit);
    }
    print_trace(r, io.out);
    return exit_for(r.status);
  });
}

int cmd_report(const ReportArgs& a, Streams io) {
  return guarded(io, [&] {
    auto prog = load_program(a.program);
    SpaceMode mode = make_mode(a.space);
    ScriptedInput in(load_script(a.script));
    Run r = run(prog, in, make_scheduler(a.schedule), a.schedule.step_limit);
    CostReport rep = cost_report(r, mode, a.exact_limit);
    io.out << (a.json ? report_json({rep}, nullptr) : format_report(rep));
    return kOk;
  });
}

int cmd_check(const CheckArgs& a, Streams io) {
  return guarded(io, [&] {
    auto prog = load_program(a.program);
    BoundExpr f = parse_bound(a.time), g = parse_bound(a.space);
    if (!fs::is_directory(a.suite)) throw UsageError("suite directory not found: " + a.suite);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.suite))
      if (entry.is_regular_file() && entry.path().extension() == ".in") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Script> suite;
    for (const auto& p : files) suite.push_back(load_script(p.string()));

    EvidenceOptions opts;
    opts.mode = make_mode(a.space_mode);
    opts.exact_limit = a.exact_limit;
    opts.scheduler = make_scheduler(a.schedule);
    opts.step_limit = a.schedule.step_limit;
    opts.parallel = !a.sequential;
    Evidence ev = class_evidence(prog, suite, f, g, opts);

    if (a.json) {
      io.out << report_json(ev.reports, &ev.verdict);
    } else {
      for (std::size_t k = 0; k < ev.reports.size(); ++k) {
        io.out << "script " << (k + 1) << " " << files[k].filename().string() << "\n";
        io.out << format_report(ev.reports[k]);
      }
      io.out << format_verdict(ev.verdict);
    }
    return ev.verdict.pass() ? kOk : kFail;
  });
}

int cmd_encode(const EncodeArgs& a, Streams io) {
  return guarded(io, [&] {
    const std::string text = read_file(a.spec);
    Program p;
    if (a.kind == "tm") p = encode_tm(parse_tm(text));
    else if (a.kind == "atm") p = encode_atm(parse_atm(text));
    else if (a.kind == "ram") p = encode_ram(parse_ram(text));
    else if (a.kind == "pram") p = encode_pram(parse_pram(text));
    else if (a.kind == "circuit") p = encode_circuit(parse_circuit(text));
    else if (a.kind == "rtm") p = encode_rtm(parse_rtm(text));
    else if (a.kind == "server") p = serverize(*load_program(a.spec));
    else if (a.kind == "offline") p = offline_from_online(*load_program(a.spec));
    else if (a.kind == "online") p = online_from_offline(*load_program(a.spec));
    else throw UsageError("unknown kind '" + a.kind + "'");
    const std::string src = to_source(p);
    if (a.output) {
      std::ofstream f(*a.output, std::ios::binary);
      if (!f) throw UsageError("cannot write " + *a.output);
      f << src;
    } else {
      io.out << src;
    }
    return kOk;
  });
}

int cmd_compare(const CompareArgs& a, Streams io) {
  return guarded(io, [&] {
    struct Side {
      std::optional<FunTable> table;
      std::shared_ptr<const Program> prog;
    };
    auto load = [&](const std::string& path) {
      Side s;
      if (is_funtable_path(path)) {
        try {
          s.table = parse_funtable(read_file(path));
        } catch (const FormatError& e) {
          throw UsageError(path + ": " + e.what());
        }
      } else {
        s.prog = load_program(path);
      }
      return s;
    };
    Side left = load(a.left), right = load(a.right);

    std::vector<Word> inputs;
    if (a.inputs) {
      inputs = parse_word_list(*a.inputs);
    } else {
      std::set<Word> dom;
      for (const Side* s : {&left, &right})
        if (s->table)
          for (const auto& [k, v] : *s->table) dom.insert(k);
      if (dom.empty()) throw UsageError("--inputs is required when comparing two programs");
      inputs.assign(dom.begin(), dom.end());
    }

    ExploreOptions opts;
    opts.state_limit = a.state_limit;
    auto lts = [&](const Side& s) {
      return s.table ? functional_lts(*s.table, a.in_channel, a.out_channel) : explore_lts(*s.prog, inputs, opts);
    };
    FiniteLts la = lts(left), lb = lts(right);
    BisimVerdict v = weak_bisim(la, lb, a.div_sensitive);
    io.out << "states left=" << la.num_states() << " right=" << lb.num_states() << "\n";
    io.out << "verdict " << to_string(v.outcome) << (a.div_sensitive ? " (divergence-sensitive)" : " (weak)") << "\n";
    if (!v.reason.empty()) io.out << "reason " << v.reason << "\n";
    switch (v.outcome) {
      case BisimVerdict::Outcome::Equivalent: return kOk;
      case BisimVerdict::Outcome::NotEquivalent: return kFail;
      case BisimVerdict::Outcome::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
  });
}

int cmd_explore(const ExploreArgs& a, Streams io) {
  return guarded(io, [&] {
    auto prog = load_program(a.program);
    ExploreOptions opts;
    opts.state_limit = a.state_limit;
    opts.visible_depth = a.depth;
    FiniteLts l = explore_lts(*prog, a.inputs ? parse_word_list(*a.inputs) : std::vector<Word>{}, opts);
    std::size_t truncated = 0;
    for (std::size_t s = 0; s < l.num_states(); ++s) truncated += l.truncated(s);
    io.out << "states " << l.num_states() << " transitions " << l.num_transitions() << " truncated " << truncated
           << " initial " << l.initial() << "\n";
    for (std::size_t s = 0; s < l.num_states(); ++s) {
      if (l.truncated(s)) io.out << s << " truncated\n";
      for (const auto& e : l.edges(s)) io.out << s << " " << edge_label(e.action, prog->inputs) << " " << e.target << "\n";
    }
    return kOk;
  });
}

}  // namespace procm::cli
