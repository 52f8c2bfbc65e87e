#include "procm/printer.hpp"

#include <sstream>

namespace procm {

namespace {

void print(std::ostream& os, const StrExpr& e) {
  switch (e.kind) {
    case StrExpr::Kind::Var: os << e.var; return;
    case StrExpr::Kind::Lit: os << e.lit.quoted(); return;
    case StrExpr::Kind::Prepend0: os << "0:"; break;
    case StrExpr::Kind::Prepend1: os << "1:"; break;
    case StrExpr::Kind::Tail: os << "tl "; break;
  }
  print(os, *e.arg);
}

void print(std::ostream& os, const BoolExpr& b) {
  switch (b.kind) {
    case BoolExpr::Kind::True: os << "tt"; return;
    case BoolExpr::Kind::False: os << "ff"; return;
    case BoolExpr::Kind::IsZero: os << "is0 "; break;
    case BoolExpr::Kind::IsEmpty: os << "nil "; break;
  }
  print(os, *b.arg);
}

void print(std::ostream& os, const ChannelRef& ch) {
  if (ch.kind == ChannelRef::Kind::Internal) {
    os << '[';
    print(os, *ch.key);
    os << ']';
  } else {
    os << ch.name;
  }
}

void print(std::ostream& os, const Process& p) {
  switch (p.kind) {
    case Process::Kind::Nil: os << '0'; return;
    case Process::Kind::Call:
      os << p.name << '<';
      for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) os << ", ";
        print(os, *p.args[i]);
      }
      os << '>';
      return;
    case Process::Kind::Send:
      print(os, p.channel);
      os << '!';
      print(os, *p.payload);
      os << '.';
      print(os, *p.first);
      return;
    case Process::Kind::Recv:
      print(os, p.channel);
      os << '?' << p.name << '.';
      print(os, *p.first);
      return;
    case Process::Kind::Cond:
      os << "if ";
      print(os, *p.cond);
      os << " then ";
      print(os, *p.first);
      os << " else ";
      print(os, *p.second);
      return;
    case Process::Kind::Par:
      os << '(';
      print(os, *p.first);
      os << " | ";
      print(os, *p.second);
      os << ')';
      return;
  }
}

template <typename T>
std::string render(const T& x) {
  std::ostringstream os;
  print(os, x);
  return os.str();
}

}  // namespace

std::string to_source(const StrExpr& e) { return render(e); }
std::string to_source(const BoolExpr& b) { return render(b); }
std::string to_source(const Process& p) { return render(p); }
std::string to_source(const ChannelRef& ch) { return render(ch); }

std::string to_source(const Program& prog) {
  std::ostringstream os;
  for (const auto& name : prog.inputs) os << "input " << name << ";\n";
  for (const auto& name : prog.outputs) os << "output " << name << ";\n";
  for (const auto& [name, def] : prog.defs) {
    os << name << '(';
    for (std::size_t i = 0; i < def.params.size(); ++i) {
      if (i) os << ", ";
      os << def.params[i];
    }
    os << ") := ";
    print(os, *def.body);
    os << ";\n";
  }
  os << "main := ";
  print(os, *prog.main);
  os << '\n';
  return os.str();
}

}  // namespace procm
