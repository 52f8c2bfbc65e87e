#pragma once

// The process machine: configurations of tagged processors and keyed FIFO
// queues, the eight transition rules with their weights, and instrumented
// runs under a scheduling policy.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "procm/eval.hpp"
#include "procm/syntax.hpp"
#include "procm/word.hpp"

namespace procm {

enum class Op { Nil, Rec, Snd, Rcv, Out, Inp, Cnd, Spn };

const char* to_string(Op op);
bool is_communication(Op op);

/// Queue key for Snd/Rcv, channel name for Out/Inp, nothing otherwise.
struct Subject {
  enum class Kind { None, Queue, ExternalIn, ExternalOut };

  Kind kind = Kind::None;
  Word key;
  std::string channel;

  static Subject none() { return {}; }
  static Subject queue(Word k) { return {Kind::Queue, std::move(k), {}}; }
  static Subject external_in(std::string ch) { return {Kind::ExternalIn, {}, std::move(ch)}; }
  static Subject external_out(std::string ch) { return {Kind::ExternalOut, {}, std::move(ch)}; }

  bool present() const noexcept { return kind != Kind::None; }
  friend bool operator==(const Subject&, const Subject&) = default;
};

std::string to_string(const Subject& s);

/// Visible action (channel, word) or the silent action.
struct Action {
  bool visible = false;
  std::string channel;
  Word word;

  static Action tau() { return {}; }
  static Action io(std::string ch, Word w) { return {true, std::move(ch), std::move(w)}; }
  friend bool operator==(const Action&, const Action&) = default;
};

struct ProcessorState {
  ProcessPtr process;
  Environment env;
  Word tag;
};

using QueueState = std::map<Word, std::deque<Word>>;

struct Configuration {
  std::vector<ProcessorState> processors;  // sorted by tag
  QueueState queues;                       // keys with empty lists are absent

  const ProcessorState* find(const Word& tag) const;
};

/// Structural equality: same tags, environments, queues and process terms.
bool operator==(const Configuration& a, const Configuration& b);

/// Canonical string key for hashing configurations of one program. Process
/// terms are identified by node address, which is stable for the lifetime of
/// the program since the machine never builds new process nodes.
std::string config_key(const Configuration& c);

/// Human-readable rendering, one processor or queue per line.
std::string describe(const Configuration& c);

std::uint64_t queue_size(const std::deque<Word>& q);
std::uint64_t config_size(const Configuration& c);

struct TransitionRecord {
  Op op = Op::Nil;
  Word tag;
  std::uint64_t weight = 0;
  Subject subject;
  Action action;
  std::uint64_t post_size = 0;
};

/// One enabled move. An evaluation failure while deciding the move yields a
/// candidate with `error` set; applying it halts the run.
struct Candidate {
  std::size_t processor = 0;
  Word tag;
  Op op = Op::Nil;
  Word input;  // Inp only
  std::optional<EvalErrorKind> error;
  std::string message;
};

class InputProvider {
 public:
  virtual ~InputProvider() = default;
  /// Next word available on an input channel, without consuming it.
  virtual std::optional<Word> peek(const std::string& channel) = 0;
  virtual void consume(const std::string& channel) = 0;
};

/// Per-channel finite word lists; each word is handed out once, in order.
class ScriptedInput : public InputProvider {
 public:
  ScriptedInput() = default;
  explicit ScriptedInput(std::map<std::string, std::vector<Word>> script);

  void add(const std::string& channel, Word w) { queues_[channel].push_back(std::move(w)); }
  std::optional<Word> peek(const std::string& channel) override;
  void consume(const std::string& channel) override;

  /// Words not yet consumed.
  std::size_t remaining() const;

 private:
  std::map<std::string, std::deque<Word>> queues_;
};

/// Asks a callback for the next word the first time a channel is polled.
/// A callback answer of nullopt means no input will ever arrive there.
class InteractiveInput : public InputProvider {
 public:
  using Source = std::function<std::optional<Word>(const std::string& channel)>;
  explicit InteractiveInput(Source source) : source_(std::move(source)) {}

  std::optional<Word> peek(const std::string& channel) override;
  void consume(const std::string& channel) override;

 private:
  Source source_;
  std::map<std::string, std::optional<Word>> pending_;
  std::map<std::string, bool> closed_;
};

/// Words offered on an input channel when enumerating candidates.
using InputChoices = std::function<std::vector<Word>(const std::string& channel)>;

Configuration initial_config(const Program& prog);

/// Candidates with each Inp branching over inputs(channel).
std::vector<Candidate> enabled(const Configuration& c, const Program& prog, const InputChoices& inputs);

/// Candidates with Inp offered only the provider's next word.
std::vector<Candidate> enabled(const Configuration& c, const Program& prog, InputProvider& in);

/// Applies a non-error candidate. Throws EvalError for an error candidate.
std::pair<Configuration, TransitionRecord> step(const Configuration& c, const Program& prog, const Candidate& cand);

/// In-place form of step. `size` is |c| before the move; the record carries
/// the size afterwards.
TransitionRecord apply(Configuration& c, const Program& prog, const Candidate& cand, std::uint64_t size);

/// Position of the candidate with the given tag, op and input word, if any.
std::optional<std::size_t> find_candidate(const std::vector<Candidate>& cands, const Word& tag, Op op,
                                          const Word& input = Word());

struct Scheduler {
  enum class Kind { FifoTag, Random };

  Kind kind = Kind::FifoTag;
  std::uint64_t seed = 0;

  static Scheduler fifo_tag() { return {}; }
  static Scheduler random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct RunStatus {
  enum class Kind { Completed, StepLimit, RuntimeError };

  Kind kind = Kind::Completed;
  std::optional<EvalErrorKind> error;
  std::string message;

  std::string describe() const;
};

struct Run {
  std::shared_ptr<const Program> program;
  Configuration initial;
  std::vector<TransitionRecord> steps;
  std::vector<std::uint64_t> sizes;
  Configuration final;
  RunStatus status;
};

Run run(std::shared_ptr<const Program> prog, InputProvider& in, Scheduler policy = {},
        std::size_t step_limit = 1'000'000);

}  // namespace procm
