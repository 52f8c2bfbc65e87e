#pragma once

// Events of a run, the independence relation on event types, the causal
// order and the time, space and input-size costs of events.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "procm/machine.hpp"

namespace procm {

struct EventType {
  Word tag;
  Op op = Op::Nil;
  std::uint64_t weight = 0;
  Subject subject;

  static EventType of(const TransitionRecord& r) { return {r.tag, r.op, r.weight, r.subject}; }
  friend bool operator==(const EventType&, const EventType&) = default;
};

/// Two tags are comparable when one is a prefix of the other.
bool tags_comparable(const Word& a, const Word& b);

/// Symmetric, irreflexive. Event types of comparable tags are dependent, so a
/// processor's events stay ordered after its own Spn.
bool independent(const EventType& a, const EventType& b);

struct Event {
  enum class Kind { Input, Output, Internal };

  std::size_t index = 0;  // 1-based position in the run
  EventType etype;
  Kind kind = Kind::Internal;
  Action action;
};

/// Causal order of one run. Event arguments are 0-based run positions.
class CausalDag {
 public:
  CausalDag() = default;
  CausalDag(std::vector<Event> events, std::vector<std::vector<std::size_t>> preds,
            std::vector<std::uint64_t> sizes);

  std::size_t size() const noexcept { return events_.size(); }
  const std::vector<Event>& events() const noexcept { return events_; }
  const Event& event(std::size_t e) const { return events_.at(e); }

  /// Dependence edges into e, each from an earlier event. Their
  /// reflexive-transitive closure is the causal order.
  const std::vector<std::size_t>& preds(std::size_t e) const { return preds_.at(e); }

  /// Configuration sizes |C0|..|Cn| of the run.
  const std::vector<std::uint64_t>& sizes() const noexcept { return sizes_; }

  bool leq(std::size_t a, std::size_t b) const;

  /// Events below or equal to e, in run order.
  std::vector<std::size_t> downset(std::size_t e) const;

  std::vector<std::size_t> output_events() const;

 private:
  std::vector<Event> events_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::uint64_t> sizes_;
};

CausalDag build_causal_dag(const Run& r);

/// Heaviest chain with maximum e.
std::uint64_t time_cost(const CausalDag& d, std::size_t e);
std::vector<std::uint64_t> time_costs(const CausalDag& d);

class CostLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReplayFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute force: rebuilds the order from pairwise independence and
/// enumerates every chain ending at e. Throws CostLimitExceeded when the
/// downset of e is larger than `limit`.
std::uint64_t oracle_time_cost(const CausalDag& d, std::size_t e, std::size_t limit = 12);

enum class SpaceMode { Observed, Exact };

const char* to_string(SpaceMode m);

/// Observed: largest configuration along the downset of e replayed in run
/// order. Exact: largest configuration over all linearizations of the
/// downset, checking that every ideal is reached in one configuration.
std::uint64_t space_cost(const Run& r, const CausalDag& d, std::size_t e, SpaceMode mode, std::size_t limit = 12);

/// Configurations reached by replaying the given events in order from the
/// initial configuration. Throws ReplayFailure if an event is not enabled.
std::vector<Configuration> replay(const Run& r, const CausalDag& d, const std::vector<std::size_t>& order);

/// Input events below e as (channel, word), in run order.
std::vector<std::pair<std::string, Word>> causal_inputs(const CausalDag& d, std::size_t e);

/// Sum of |w|+1 over the input events below the output event e.
std::uint64_t input_size(const CausalDag& d, std::size_t e);

}  // namespace procm
