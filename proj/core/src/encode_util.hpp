#pragma once

// Terse constructors shared by the encoders.

#include <string>
#include <vector>

#include "procm/encoders.hpp"
#include "procm/parser.hpp"

namespace procm::build {

inline StrExprPtr w(const char* bits) { return lit(Word(bits)); }
inline StrExprPtr tl(StrExprPtr e) { return StrExpr::tail(std::move(e)); }
inline StrExprPtr p0(StrExprPtr e) { return StrExpr::prepend0(std::move(e)); }
inline StrExprPtr p1(StrExprPtr e) { return StrExpr::prepend1(std::move(e)); }

inline BoolExprPtr nil(StrExprPtr e) { return BoolExpr::is_empty(std::move(e)); }
inline BoolExprPtr is0(StrExprPtr e) { return BoolExpr::is_zero(std::move(e)); }

inline ProcessPtr stop() { return Process::nil(); }
inline ProcessPtr ite(BoolExprPtr b, ProcessPtr p, ProcessPtr q) {
  return Process::if_else(std::move(b), std::move(p), std::move(q));
}
inline ProcessPtr par(ProcessPtr p, ProcessPtr q) { return Process::par(std::move(p), std::move(q)); }
inline ProcessPtr call(const std::string& name, std::vector<StrExprPtr> args = {}) {
  return Process::call(name, std::move(args));
}
inline ProcessPtr snd(StrExprPtr key, StrExprPtr v, ProcessPtr k) {
  return Process::send(ChannelRef::internal(std::move(key)), std::move(v), std::move(k));
}
inline ProcessPtr rcv(StrExprPtr key, const std::string& x, ProcessPtr k) {
  return Process::recv(ChannelRef::internal(std::move(key)), x, std::move(k));
}
inline ProcessPtr out(const std::string& ch, StrExprPtr v, ProcessPtr k = Process::nil()) {
  return Process::send(ChannelRef::external_out(ch), std::move(v), std::move(k));
}
inline ProcessPtr inp(const std::string& ch, const std::string& x, ProcessPtr k) {
  return Process::recv(ChannelRef::external_in(ch), x, std::move(k));
}

inline void define(Program& p, const std::string& name, std::vector<std::string> params, ProcessPtr body) {
  p.defs[name] = ProcDef{name, std::move(params), std::move(body)};
}

/// Alpha-normalizes and checks a generated program.
inline Program finish(const Program& p) {
  Program out = normalize_binders(p);
  validate_program(out);
  return out;
}

}  // namespace procm::build
