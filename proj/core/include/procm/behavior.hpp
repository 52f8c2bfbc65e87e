#pragma once

// Finite fragments of process LTSs, divergence, weak bisimilarity and the
// functional-behavior check.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procm/machine.hpp"
#include "procm/syntax.hpp"

namespace procm {

/// Finite map from test inputs to expected outputs.
using FunTable = std::map<Word, Word>;

class FiniteLts {
 public:
  struct Edge {
    Action action;
    std::size_t target;
  };

  FiniteLts() = default;

  std::size_t add_state(bool truncated = false);
  void add_transition(std::size_t from, Action action, std::size_t to);
  void mark_truncated(std::size_t s) { truncated_.at(s) = 1; }

  std::size_t initial() const noexcept { return initial_; }
  void set_initial(std::size_t s) { initial_ = s; }
  std::size_t num_states() const noexcept { return edges_.size(); }
  std::size_t num_transitions() const noexcept;
  const std::vector<Edge>& edges(std::size_t s) const { return edges_.at(s); }
  bool truncated(std::size_t s) const { return truncated_.at(s) != 0; }
  bool any_truncated() const;

 private:
  std::size_t initial_ = 0;
  std::vector<std::vector<Edge>> edges_;
  std::vector<char> truncated_;
};

struct ExploreOptions {
  std::size_t state_limit = 10'000;
  /// When set, visible transitions beyond this many visible steps from the
  /// initial state are not explored.
  std::optional<std::size_t> visible_depth;
};

/// Breadth-first exploration of the process LTS. Every Inp offers each of
/// the input words; internal rules are tau, Out is visible. Runtime-error
/// candidates contribute no transition.
FiniteLts explore_lts(const Program& prog, const std::vector<Word>& input_words, ExploreOptions opts = {});

/// The specification LTS: one input on `in`, then one output of t(w) on `out`.
FiniteLts functional_lts(const FunTable& t, const std::string& in = "i", const std::string& out = "o");

struct Divergence {
  std::set<std::size_t> divergent;
  /// States that can tau-reach a truncated state and are not known divergent.
  std::set<std::size_t> unknown;
};

Divergence divergent_states(const FiniteLts& l);

struct BisimVerdict {
  enum class Outcome { Equivalent, NotEquivalent, Inconclusive };

  Outcome outcome = Outcome::Inconclusive;
  bool divergence_sensitive = false;
  /// Pairs (state of a, state of b) of the largest relation found, on success.
  std::vector<std::pair<std::size_t, std::size_t>> relation;
  /// Distinguishing information or the reason for an inconclusive verdict.
  std::string reason;

  bool equivalent() const noexcept { return outcome == Outcome::Equivalent; }
};

const char* to_string(BisimVerdict::Outcome o);

/// Greatest weak bisimulation between a and b. With divergence sensitivity,
/// related states must agree on divergence, checked in both directions.
BisimVerdict weak_bisim(const FiniteLts& a, const FiniteLts& b, bool divergence_sensitive);

/// Compares the explored program against functional_lts(t) on dom(t).
BisimVerdict check_functional(const Program& prog, const FunTable& t, std::size_t state_limit = 10'000,
                              const std::string& in = "i", const std::string& out = "o");

}  // namespace procm
