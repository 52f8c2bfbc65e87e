#pragma once

// Abstract syntax of the process language: string expressions, Boolean
// expressions, processes, definitions and whole programs. All nodes are
// immutable and shared through shared_ptr<const T>.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "procm/word.hpp"

namespace procm {

struct StrExpr;
struct BoolExpr;
struct Process;
using StrExprPtr = std::shared_ptr<const StrExpr>;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;
using ProcessPtr = std::shared_ptr<const Process>;

struct StrExpr {
  enum class Kind { Var, Lit, Prepend0, Prepend1, Tail };

  Kind kind;
  std::string var;  // Var
  Word lit;         // Lit
  StrExprPtr arg;   // Prepend0, Prepend1, Tail

  static StrExprPtr variable(std::string name);
  static StrExprPtr literal(Word w);
  static StrExprPtr prepend0(StrExprPtr e);
  static StrExprPtr prepend1(StrExprPtr e);
  static StrExprPtr prepend(char bit, StrExprPtr e);
  static StrExprPtr tail(StrExprPtr e);
};

struct BoolExpr {
  enum class Kind { True, False, IsZero, IsEmpty };

  Kind kind;
  StrExprPtr arg;  // IsZero, IsEmpty

  static BoolExprPtr truth();
  static BoolExprPtr falsity();
  static BoolExprPtr is_zero(StrExprPtr e);
  static BoolExprPtr is_empty(StrExprPtr e);
};

/// Target of a send or receive prefix.
struct ChannelRef {
  enum class Kind { ExternalIn, ExternalOut, Internal };

  Kind kind = Kind::Internal;
  std::string name;  // external channels
  StrExprPtr key;    // internal queue key

  static ChannelRef external_in(std::string name) { return {Kind::ExternalIn, std::move(name), nullptr}; }
  static ChannelRef external_out(std::string name) { return {Kind::ExternalOut, std::move(name), nullptr}; }
  static ChannelRef internal(StrExprPtr key) { return {Kind::Internal, {}, std::move(key)}; }
};

struct Process {
  enum class Kind { Nil, Call, Send, Recv, Cond, Par };

  Kind kind;
  std::string name;               // Call: identifier; Recv: bound variable
  std::vector<StrExprPtr> args;   // Call
  ChannelRef channel;             // Send, Recv
  StrExprPtr payload;             // Send
  BoolExprPtr cond;               // Cond
  ProcessPtr first;               // continuation (Send/Recv), then-branch, left of Par
  ProcessPtr second;              // else-branch, right of Par

  static ProcessPtr nil();
  static ProcessPtr call(std::string ident, std::vector<StrExprPtr> args);
  static ProcessPtr send(ChannelRef ch, StrExprPtr payload, ProcessPtr cont);
  static ProcessPtr recv(ChannelRef ch, std::string var, ProcessPtr cont);
  static ProcessPtr if_else(BoolExprPtr b, ProcessPtr then_p, ProcessPtr else_p);
  static ProcessPtr par(ProcessPtr left, ProcessPtr right);
};

/// Right-nested parallel composition of a list; Nil for an empty list.
ProcessPtr par_all(const std::vector<ProcessPtr>& ps);

struct ProcDef {
  std::string name;
  std::vector<std::string> params;
  ProcessPtr body;
};

struct Program {
  std::set<std::string> inputs;
  std::set<std::string> outputs;
  std::map<std::string, ProcDef> defs;
  ProcessPtr main;

  const ProcDef* find(const std::string& ident) const;
};

bool equal(const StrExpr& a, const StrExpr& b);
bool equal(const BoolExpr& a, const BoolExpr& b);
bool equal(const Process& a, const Process& b);
bool equal(const Program& a, const Program& b);

std::set<std::string> free_vars(const StrExpr& e);
std::set<std::string> free_vars(const BoolExpr& b);
std::set<std::string> free_vars(const Process& p);

/// True iff the expression contains no literal, i.e. its cost depends only on its shape.
bool literal_free(const StrExpr& e);

/// Visits every node of a process tree in pre-order.
template <typename F>
void for_each_node(const Process& p, F&& f) {
  f(p);
  if (p.first) for_each_node(*p.first, f);
  if (p.second) for_each_node(*p.second, f);
}

}  // namespace procm
