#pragma once

// Classical machine descriptions accepted by the encoders, with their
// line-oriented text formats.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "procm/word.hpp"

namespace procm {

class SpecError : public std::runtime_error {
 public:
  SpecError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class Move { L, R };

/// Tape symbols are '0', '1' and '_' (blank).
struct TmAction {
  std::string next;
  char write = '0';
  Move move = Move::R;
};

struct TmSpec {
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> halting;
  std::map<std::pair<std::string, char>, TmAction> delta;

  void validate() const;
};

TmSpec parse_tm(std::string_view text);

enum class Polarity { Existential, Universal, Accepting, Rejecting };

struct AtmSpec {
  std::vector<std::string> states;
  std::map<std::string, Polarity> polarity;
  std::string initial;
  /// (state, read symbol, branch) -> action
  std::map<std::tuple<std::string, char, int>, TmAction> delta;

  void validate() const;
};

AtmSpec parse_atm(std::string_view text);

enum class RamOp { Load, LoadI, Store, StoreI, Inc, Dec, JZero, Jump, Halt };

const char* to_string(RamOp op);

struct RamInstr {
  RamOp op = RamOp::Halt;
  std::size_t arg = 0;  // address, or 1-based jump target
};

/// Registers hold unary naturals 0^n. Falling off the end halts.
struct RamProgram {
  std::vector<RamInstr> code;
  std::vector<std::pair<std::size_t, Word>> init;  // initial memory cells

  void validate() const;
};

RamProgram parse_ram(std::string_view text);

struct PramProgram {
  std::vector<RamProgram> components;
  std::vector<std::pair<std::size_t, Word>> init;  // shared memory

  void validate() const;
};

/// `init` lines before the first `component` line set shared memory; each
/// `component` line starts a new RAM program.
PramProgram parse_pram(std::string_view text);

enum class GateKind { And, Or, Not };

struct Gate {
  GateKind kind = GateKind::And;
  std::vector<std::size_t> inputs;  // wire ids
};

/// Wires 1..m are the inputs; gate k (1-based) drives wire m+k.
struct CircuitSpec {
  std::size_t inputs = 0;
  std::vector<Gate> gates;
  std::vector<std::size_t> outputs;

  std::size_t wires() const noexcept { return inputs + gates.size(); }
  void validate() const;
};

CircuitSpec parse_circuit(std::string_view text);

/// Data symbol "_" is the blank.
struct RtmTransition {
  std::string from;
  std::optional<std::string> action;  // nullopt for tau
  std::string read;
  std::string write;
  Move move = Move::R;
  std::string to;
};

struct RtmSpec {
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> actions;
  std::vector<std::string> data;
  std::vector<RtmTransition> transitions;

  void validate() const;
};

RtmSpec parse_rtm(std::string_view text);

}  // namespace procm
