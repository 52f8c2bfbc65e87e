#include "procm/eval.hpp"

namespace procm {

const Word* Environment::lookup(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

std::uint64_t Environment::size() const {
  std::uint64_t total = 0;
  for (const auto& [_, w] : vars_) total += w.size() + 1;
  return total;
}

const char* to_string(EvalErrorKind k) {
  switch (k) {
    case EvalErrorKind::UnboundVariable: return "unbound-variable";
    case EvalErrorKind::TailOfEmpty: return "tail-of-empty";
  }
  return "?";
}

EvalError::EvalError(EvalErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

Word eval_str(const StrExpr& e, const Environment& m) {
  switch (e.kind) {
    case StrExpr::Kind::Var: {
      const Word* w = m.lookup(e.var);
      if (!w) throw EvalError(EvalErrorKind::UnboundVariable, e.var);
      return *w;
    }
    case StrExpr::Kind::Lit: return e.lit;
    case StrExpr::Kind::Prepend0: return eval_str(*e.arg, m).prepended('0');
    case StrExpr::Kind::Prepend1: return eval_str(*e.arg, m).prepended('1');
    case StrExpr::Kind::Tail: {
      Word w = eval_str(*e.arg, m);
      if (w.empty()) throw EvalError(EvalErrorKind::TailOfEmpty, "tl applied to \"\"");
      return w.tail();
    }
  }
  throw std::logic_error("bad StrExpr kind");
}

bool eval_bool(const BoolExpr& b, const Environment& m) {
  switch (b.kind) {
    case BoolExpr::Kind::True: return true;
    case BoolExpr::Kind::False: return false;
    case BoolExpr::Kind::IsZero: {
      Word w = eval_str(*b.arg, m);
      return !w.empty() && w.front() == '0';
    }
    case BoolExpr::Kind::IsEmpty: return eval_str(*b.arg, m).empty();
  }
  throw std::logic_error("bad BoolExpr kind");
}

std::uint64_t shape_cost(const StrExpr& e) {
  switch (e.kind) {
    case StrExpr::Kind::Var: return 1;
    case StrExpr::Kind::Lit: return e.lit.size() + 1;
    default: return 1 + shape_cost(*e.arg);
  }
}

std::uint64_t shape_cost(const BoolExpr& b) {
  if (b.kind == BoolExpr::Kind::True || b.kind == BoolExpr::Kind::False) return 1;
  return 1 + shape_cost(*b.arg);
}

std::uint64_t expr_time_cost(const StrExpr& e, const Environment& m) {
  (void)eval_str(e, m);
  return shape_cost(e);
}

std::uint64_t expr_time_cost(const BoolExpr& b, const Environment& m) {
  (void)eval_bool(b, m);
  return shape_cost(b);
}

}  // namespace procm
