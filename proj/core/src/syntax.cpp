#include "procm/syntax.hpp"

namespace procm {

StrExprPtr StrExpr::variable(std::string name) {
  return std::make_shared<const StrExpr>(StrExpr{Kind::Var, std::move(name), {}, nullptr});
}
StrExprPtr StrExpr::literal(Word w) {
  return std::make_shared<const StrExpr>(StrExpr{Kind::Lit, {}, std::move(w), nullptr});
}
StrExprPtr StrExpr::prepend0(StrExprPtr e) {
  return std::make_shared<const StrExpr>(StrExpr{Kind::Prepend0, {}, {}, std::move(e)});
}
StrExprPtr StrExpr::prepend1(StrExprPtr e) {
  return std::make_shared<const StrExpr>(StrExpr{Kind::Prepend1, {}, {}, std::move(e)});
}
StrExprPtr StrExpr::prepend(char bit, StrExprPtr e) {
  return bit == '0' ? prepend0(std::move(e)) : prepend1(std::move(e));
}
StrExprPtr StrExpr::tail(StrExprPtr e) {
  return std::make_shared<const StrExpr>(StrExpr{Kind::Tail, {}, {}, std::move(e)});
}

BoolExprPtr BoolExpr::truth() { return std::make_shared<const BoolExpr>(BoolExpr{Kind::True, nullptr}); }
BoolExprPtr BoolExpr::falsity() { return std::make_shared<const BoolExpr>(BoolExpr{Kind::False, nullptr}); }
BoolExprPtr BoolExpr::is_zero(StrExprPtr e) {
  return std::make_shared<const BoolExpr>(BoolExpr{Kind::IsZero, std::move(e)});
}
BoolExprPtr BoolExpr::is_empty(StrExprPtr e) {
  return std::make_shared<const BoolExpr>(BoolExpr{Kind::IsEmpty, std::move(e)});
}

namespace {
std::shared_ptr<const Process> make(Process p) { return std::make_shared<const Process>(std::move(p)); }
}  // namespace

ProcessPtr Process::nil() {
  static const ProcessPtr the_nil = make(Process{Kind::Nil, {}, {}, {}, nullptr, nullptr, nullptr, nullptr});
  return the_nil;
}
ProcessPtr Process::call(std::string ident, std::vector<StrExprPtr> args) {
  return make(Process{Kind::Call, std::move(ident), std::move(args), {}, nullptr, nullptr, nullptr, nullptr});
}
ProcessPtr Process::send(ChannelRef ch, StrExprPtr payload, ProcessPtr cont) {
  return make(Process{Kind::Send, {}, {}, std::move(ch), std::move(payload), nullptr, std::move(cont), nullptr});
}
ProcessPtr Process::recv(ChannelRef ch, std::string var, ProcessPtr cont) {
  return make(Process{Kind::Recv, std::move(var), {}, std::move(ch), nullptr, nullptr, std::move(cont), nullptr});
}
ProcessPtr Process::if_else(BoolExprPtr b, ProcessPtr then_p, ProcessPtr else_p) {
  return make(Process{Kind::Cond, {}, {}, {}, nullptr, std::move(b), std::move(then_p), std::move(else_p)});
}
ProcessPtr Process::par(ProcessPtr left, ProcessPtr right) {
  return make(Process{Kind::Par, {}, {}, {}, nullptr, nullptr, std::move(left), std::move(right)});
}

ProcessPtr par_all(const std::vector<ProcessPtr>& ps) {
  if (ps.empty()) return Process::nil();
  ProcessPtr acc = ps.back();
  for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) acc = Process::par(*it, acc);
  return acc;
}

const ProcDef* Program::find(const std::string& ident) const {
  auto it = defs.find(ident);
  return it == defs.end() ? nullptr : &it->second;
}

bool equal(const StrExpr& a, const StrExpr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StrExpr::Kind::Var: return a.var == b.var;
    case StrExpr::Kind::Lit: return a.lit == b.lit;
    default: return equal(*a.arg, *b.arg);
  }
}

bool equal(const BoolExpr& a, const BoolExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == BoolExpr::Kind::IsZero || a.kind == BoolExpr::Kind::IsEmpty) return equal(*a.arg, *b.arg);
  return true;
}

namespace {
bool equal_channel(const ChannelRef& a, const ChannelRef& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ChannelRef::Kind::Internal) return equal(*a.key, *b.key);
  return a.name == b.name;
}
}  // namespace

bool equal(const Process& a, const Process& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Process::Kind::Nil: return true;
    case Process::Kind::Call:
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(*a.args[i], *b.args[i])) return false;
      return true;
    case Process::Kind::Send:
      return equal_channel(a.channel, b.channel) && equal(*a.payload, *b.payload) && equal(*a.first, *b.first);
    case Process::Kind::Recv:
      return equal_channel(a.channel, b.channel) && a.name == b.name && equal(*a.first, *b.first);
    case Process::Kind::Cond:
      return equal(*a.cond, *b.cond) && equal(*a.first, *b.first) && equal(*a.second, *b.second);
    case Process::Kind::Par: return equal(*a.first, *b.first) && equal(*a.second, *b.second);
  }
  return false;
}

bool equal(const Program& a, const Program& b) {
  if (a.inputs != b.inputs || a.outputs != b.outputs || a.defs.size() != b.defs.size()) return false;
  for (const auto& [name, def] : a.defs) {
    const ProcDef* other = b.find(name);
    if (!other || other->params != def.params || !equal(*def.body, *other->body)) return false;
  }
  return equal(*a.main, *b.main);
}

namespace {
void collect(const StrExpr& e, std::set<std::string>& out) {
  if (e.kind == StrExpr::Kind::Var) out.insert(e.var);
  else if (e.arg) collect(*e.arg, out);
}

void collect(const Process& p, std::set<std::string>& out) {
  auto add_expr = [&](const StrExpr& e) { collect(e, out); };
  switch (p.kind) {
    case Process::Kind::Nil: return;
    case Process::Kind::Call:
      for (const auto& a : p.args) add_expr(*a);
      return;
    case Process::Kind::Send:
      if (p.channel.kind == ChannelRef::Kind::Internal) add_expr(*p.channel.key);
      add_expr(*p.payload);
      collect(*p.first, out);
      return;
    case Process::Kind::Recv: {
      if (p.channel.kind == ChannelRef::Kind::Internal) add_expr(*p.channel.key);
      std::set<std::string> inner;
      collect(*p.first, inner);
      inner.erase(p.name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Process::Kind::Cond:
      if (p.cond->arg) add_expr(*p.cond->arg);
      collect(*p.first, out);
      collect(*p.second, out);
      return;
    case Process::Kind::Par:
      collect(*p.first, out);
      collect(*p.second, out);
      return;
  }
}
}  // namespace

std::set<std::string> free_vars(const StrExpr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

std::set<std::string> free_vars(const BoolExpr& b) {
  return b.arg ? free_vars(*b.arg) : std::set<std::string>{};
}

std::set<std::string> free_vars(const Process& p) {
  std::set<std::string> out;
  collect(p, out);
  return out;
}

bool literal_free(const StrExpr& e) {
  if (e.kind == StrExpr::Kind::Lit) return false;
  return e.arg ? literal_free(*e.arg) : true;
}

}  // namespace procm
