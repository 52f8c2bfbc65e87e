#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "procm/syntax.hpp"
#include "procm/word.hpp"

namespace procm {

/// Finite partial map from variable names to words.
class Environment {
 public:
  Environment() = default;
  Environment(std::initializer_list<std::pair<const std::string, Word>> init) : vars_(init) {}

  const Word* lookup(const std::string& name) const;
  void bind(const std::string& name, Word value) { vars_[name] = std::move(value); }
  bool contains(const std::string& name) const { return vars_.count(name) != 0; }
  bool empty() const noexcept { return vars_.empty(); }

  /// Sum over the domain of |value| + 1.
  std::uint64_t size() const;

  const std::map<std::string, Word>& entries() const noexcept { return vars_; }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::map<std::string, Word> vars_;
};

inline std::uint64_t env_size(const Environment& m) { return m.size(); }

enum class EvalErrorKind { UnboundVariable, TailOfEmpty };

const char* to_string(EvalErrorKind k);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& detail);
  EvalErrorKind kind() const noexcept { return kind_; }

 private:
  EvalErrorKind kind_;
};

Word eval_str(const StrExpr& e, const Environment& m);
bool eval_bool(const BoolExpr& b, const Environment& m);

// Structural cost model: a variable costs 1, a literal w costs |w|+1, every
// operator adds 1 to its operand. The result never depends on the values
// bound in the environment; the environment is still checked so that the
// cost is only defined where the value is.
std::uint64_t expr_time_cost(const StrExpr& e, const Environment& m);
std::uint64_t expr_time_cost(const BoolExpr& b, const Environment& m);

/// Shape-only part of the cost model, no environment check.
std::uint64_t shape_cost(const StrExpr& e);
std::uint64_t shape_cost(const BoolExpr& b);

}  // namespace procm
