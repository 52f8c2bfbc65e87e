#include "procm/parser.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace procm {

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error((kind == Kind::Syntax ? "syntax error" : "semantic error") +
                         (line > 0 ? " at " + std::to_string(line) + ":" + std::to_string(column) : std::string()) +
                         ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, String, Digit, Punct, Assign, End };

struct Token {
  Tok type;
  std::string text;
  int line;
  int col;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw{"input", "output", "main", "if", "then", "else",
                                        "tt",    "ff",     "is0",  "nil", "tl"};
  return kw;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(ParseError::Kind::Syntax, tl, tc, "unterminated word literal");
      std::string bits(src.substr(i + 1, j - i - 1));
      if (!Word::valid_bits(bits))
        throw ParseError(ParseError::Kind::Syntax, tl, tc, "word literal may only contain 0 and 1: \"" + bits + "\"");
      out.push_back({Tok::String, bits, tl, tc});
      advance(j - i + 1);
    } else if (c == '0' || c == '1') {
      out.push_back({Tok::Digit, std::string(1, c), tl, tc});
      advance(1);
    } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::Assign, ":=", tl, tc});
      advance(2);
    } else if (std::string_view(";,()<>[]!?.:|").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), tl, tc});
      advance(1);
    } else {
      throw ParseError(ParseError::Kind::Syntax, tl, tc, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct CallSite {
  std::string name;
  std::size_t arity;
  int line;
  int col;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program prog;
    bool seen_main = false;
    while (!at_end()) {
      const Token& t = peek();
      if (is_ident("input") || is_ident("output")) {
        bool in = t.text == "input";
        next();
        Token name = expect_name("channel name");
        if (prog.inputs.count(name.text) || prog.outputs.count(name.text))
          semantic(name, "channel '" + name.text + "' declared twice");
        (in ? prog.inputs : prog.outputs).insert(name.text);
        expect_punct(";");
        inputs_ = &prog.inputs;
        outputs_ = &prog.outputs;
      } else if (is_ident("main")) {
        if (seen_main) semantic(t, "main defined twice");
        next();
        expect_assign();
        prog.main = parse_process();
        accept_punct(";");
        seen_main = true;
      } else if (t.type == Tok::Ident) {
        Token name = expect_name("definition name");
        if (prog.defs.count(name.text)) semantic(name, "definition '" + name.text + "' defined twice");
        ProcDef def;
        def.name = name.text;
        expect_punct("(");
        if (!accept_punct(")")) {
          do {
            Token p = expect_name("parameter name");
            for (const auto& q : def.params)
              if (q == p.text) semantic(p, "duplicate parameter '" + p.text + "'");
            def.params.push_back(p.text);
          } while (accept_punct(","));
          expect_punct(")");
        }
        expect_assign();
        def.body = parse_process();
        expect_punct(";");
        prog.defs.emplace(def.name, std::move(def));
      } else {
        syntax(t, "'input', 'output', a definition or 'main'");
      }
    }
    if (!seen_main) throw ParseError(ParseError::Kind::Semantic, peek().line, peek().col, "program has no main");
    for (const auto& c : calls_) {
      const ProcDef* d = prog.find(c.name);
      if (!d) throw ParseError(ParseError::Kind::Semantic, c.line, c.col, "unbound identifier '" + c.name + "'");
      if (d->params.size() != c.arity)
        throw ParseError(ParseError::Kind::Semantic, c.line, c.col,
                         "arity mismatch calling '" + c.name + "': expected " + std::to_string(d->params.size()) +
                             ", got " + std::to_string(c.arity));
    }
    return prog;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().type == Tok::End; }
  bool is_ident(const char* kw) const { return peek().type == Tok::Ident && peek().text == kw; }
  bool is_punct(const char* p) const { return peek().type == Tok::Punct && peek().text == p; }

  [[noreturn]] void syntax(const Token& t, const std::string& expected) const {
    std::string found = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseError::Kind::Syntax, t.line, t.col, "expected " + expected + ", found " + found);
  }
  [[noreturn]] void semantic(const Token& t, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Semantic, t.line, t.col, msg);
  }

  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect_punct(const char* p) {
    if (!accept_punct(p)) syntax(peek(), std::string("'") + p + "'");
  }
  void expect_assign() {
    if (peek().type != Tok::Assign) syntax(peek(), "':='");
    next();
  }
  Token expect_name(const char* what) {
    const Token& t = peek();
    if (t.type != Tok::Ident || keywords().count(t.text)) syntax(t, what);
    return next();
  }

  StrExprPtr parse_expr() {
    const Token& t = peek();
    if (t.type == Tok::String) {
      next();
      return StrExpr::literal(Word(t.text));
    }
    if (t.type == Tok::Digit) {
      char bit = t.text[0];
      next();
      expect_punct(":");
      return StrExpr::prepend(bit, parse_expr());
    }
    if (is_ident("tl")) {
      next();
      return StrExpr::tail(parse_expr());
    }
    if (accept_punct("(")) {
      auto e = parse_expr();
      expect_punct(")");
      return e;
    }
    Token name = expect_name("string expression");
    return StrExpr::variable(name.text);
  }

  BoolExprPtr parse_bool() {
    if (is_ident("tt")) {
      next();
      return BoolExpr::truth();
    }
    if (is_ident("ff")) {
      next();
      return BoolExpr::falsity();
    }
    if (is_ident("is0")) {
      next();
      return BoolExpr::is_zero(parse_expr());
    }
    if (is_ident("nil")) {
      next();
      return BoolExpr::is_empty(parse_expr());
    }
    syntax(peek(), "Boolean expression ('tt', 'ff', 'is0 e' or 'nil e')");
  }

  ProcessPtr parse_prefix(ChannelRef ch, const Token& at) {
    if (accept_punct("!")) {
      if (ch.kind == ChannelRef::Kind::ExternalIn) semantic(at, "cannot send on input channel '" + ch.name + "'");
      auto payload = parse_expr();
      expect_punct(".");
      return Process::send(std::move(ch), std::move(payload), parse_process());
    }
    if (accept_punct("?")) {
      if (ch.kind == ChannelRef::Kind::ExternalOut) semantic(at, "cannot receive on output channel '" + ch.name + "'");
      Token var = expect_name("variable name");
      expect_punct(".");
      return Process::recv(std::move(ch), var.text, parse_process());
    }
    syntax(peek(), "'!' or '?'");
  }

  ProcessPtr parse_process() {
    const Token& t = peek();
    if (t.type == Tok::Digit && t.text == "0") {
      next();
      return Process::nil();
    }
    if (is_ident("if")) {
      next();
      auto b = parse_bool();
      if (!is_ident("then")) syntax(peek(), "'then'");
      next();
      auto p = parse_process();
      if (!is_ident("else")) syntax(peek(), "'else'");
      next();
      auto q = parse_process();
      return Process::if_else(std::move(b), std::move(p), std::move(q));
    }
    if (accept_punct("(")) {
      std::vector<ProcessPtr> parts{parse_process()};
      while (accept_punct("|")) parts.push_back(parse_process());
      expect_punct(")");
      return par_all(parts);
    }
    if (is_punct("[")) {
      Token at = next();
      auto key = parse_expr();
      expect_punct("]");
      return parse_prefix(ChannelRef::internal(std::move(key)), at);
    }
    if (t.type == Tok::Ident && !keywords().count(t.text)) {
      Token name = next();
      if (accept_punct("<")) {
        std::vector<StrExprPtr> args;
        if (!accept_punct(">")) {
          do args.push_back(parse_expr());
          while (accept_punct(","));
          expect_punct(">");
        }
        calls_.push_back({name.text, args.size(), name.line, name.col});
        return Process::call(name.text, std::move(args));
      }
      bool in = inputs_ && inputs_->count(name.text);
      bool out = outputs_ && outputs_->count(name.text);
      if (!in && !out) {
        if (is_punct("!") || is_punct("?")) semantic(name, "undeclared channel '" + name.text + "'");
        syntax(peek(), "'<' after process identifier '" + name.text + "'");
      }
      return parse_prefix(in ? ChannelRef::external_in(name.text) : ChannelRef::external_out(name.text), name);
    }
    syntax(t, "process");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::set<std::string>* inputs_ = nullptr;
  const std::set<std::string>* outputs_ = nullptr;
  std::vector<CallSite> calls_;
};

// ---- alpha-renaming -------------------------------------------------------

void all_names(const StrExpr& e, std::set<std::string>& out) {
  if (e.kind == StrExpr::Kind::Var) out.insert(e.var);
  else if (e.arg) all_names(*e.arg, out);
}

void all_names(const Process& p, std::set<std::string>& out) {
  for_each_node(p, [&](const Process& n) {
    if (n.kind == Process::Kind::Recv) out.insert(n.name);
    for (const auto& a : n.args) all_names(*a, out);
    if (n.channel.key) all_names(*n.channel.key, out);
    if (n.payload) all_names(*n.payload, out);
    if (n.cond && n.cond->arg) all_names(*n.cond->arg, out);
  });
}

using Subst = std::map<std::string, std::string>;

StrExprPtr rename(const StrExprPtr& e, const Subst& s) {
  switch (e->kind) {
    case StrExpr::Kind::Var: {
      auto it = s.find(e->var);
      return it == s.end() || it->second == e->var ? e : StrExpr::variable(it->second);
    }
    case StrExpr::Kind::Lit: return e;
    default: {
      auto arg = rename(e->arg, s);
      if (arg == e->arg) return e;
      if (e->kind == StrExpr::Kind::Tail) return StrExpr::tail(arg);
      return StrExpr::prepend(e->kind == StrExpr::Kind::Prepend0 ? '0' : '1', arg);
    }
  }
}

class Renamer {
 public:
  Renamer(std::set<std::string> bound, std::set<std::string> taken) : used_(std::move(bound)), taken_(std::move(taken)) {}

  ProcessPtr run(const ProcessPtr& p, const Subst& s) {
    switch (p->kind) {
      case Process::Kind::Nil: return p;
      case Process::Kind::Call: {
        std::vector<StrExprPtr> args;
        for (const auto& a : p->args) args.push_back(rename(a, s));
        return Process::call(p->name, std::move(args));
      }
      case Process::Kind::Send:
        return Process::send(channel(p->channel, s), rename(p->payload, s), run(p->first, s));
      case Process::Kind::Recv: {
        std::string fresh = p->name;
        if (used_.count(fresh)) {
          for (int k = 1;; ++k) {
            fresh = p->name + "_" + std::to_string(k);
            if (!used_.count(fresh) && !taken_.count(fresh)) break;
          }
        }
        used_.insert(fresh);
        taken_.insert(fresh);
        Subst inner = s;
        inner[p->name] = fresh;
        return Process::recv(channel(p->channel, s), fresh, run(p->first, inner));
      }
      case Process::Kind::Cond: {
        const BoolExprPtr& b = p->cond;
        BoolExprPtr nb = b->arg ? std::make_shared<const BoolExpr>(BoolExpr{b->kind, rename(b->arg, s)}) : b;
        return Process::if_else(nb, run(p->first, s), run(p->second, s));
      }
      case Process::Kind::Par: return Process::par(run(p->first, s), run(p->second, s));
    }
    return p;
  }

 private:
  static ChannelRef channel(const ChannelRef& ch, const Subst& s) {
    if (ch.kind != ChannelRef::Kind::Internal) return ch;
    return ChannelRef::internal(rename(ch.key, s));
  }

  std::set<std::string> used_;
  std::set<std::string> taken_;
};

ProcessPtr normalize_body(const ProcessPtr& body, const std::vector<std::string>& params) {
  std::set<std::string> taken;
  all_names(*body, taken);
  taken.insert(params.begin(), params.end());
  Renamer r(std::set<std::string>(params.begin(), params.end()), std::move(taken));
  return r.run(body, {});
}

[[noreturn]] void fail(const std::string& msg) { throw ParseError(ParseError::Kind::Semantic, 0, 0, msg); }

void check_process(const Program& prog, const Process& root, const std::string& where) {
  for_each_node(root, [&](const Process& n) {
    if (n.kind == Process::Kind::Call) {
      const ProcDef* d = prog.find(n.name);
      if (!d) fail("unbound identifier '" + n.name + "' in " + where);
      if (d->params.size() != n.args.size())
        fail("arity mismatch calling '" + n.name + "' in " + where + ": expected " +
             std::to_string(d->params.size()) + ", got " + std::to_string(n.args.size()));
    }
    if (n.kind == Process::Kind::Send || n.kind == Process::Kind::Recv) {
      const ChannelRef& ch = n.channel;
      if (ch.kind == ChannelRef::Kind::ExternalIn && !prog.inputs.count(ch.name))
        fail("undeclared channel '" + ch.name + "' in " + where);
      if (ch.kind == ChannelRef::Kind::ExternalOut && !prog.outputs.count(ch.name))
        fail("undeclared channel '" + ch.name + "' in " + where);
      if (n.kind == Process::Kind::Send && ch.kind == ChannelRef::Kind::ExternalIn)
        fail("cannot send on input channel '" + ch.name + "' in " + where);
      if (n.kind == Process::Kind::Recv && ch.kind == ChannelRef::Kind::ExternalOut)
        fail("cannot receive on output channel '" + ch.name + "' in " + where);
    }
  });
}

void check_closed(const Program& prog) {
  for (const auto& [name, def] : prog.defs) {
    std::set<std::string> params(def.params.begin(), def.params.end());
    if (params.size() != def.params.size()) fail("duplicate parameter in '" + name + "'");
    for (const auto& v : free_vars(*def.body))
      if (!params.count(v)) fail("free variable '" + v + "' in definition of '" + name + "'");
  }
  auto fv = free_vars(*prog.main);
  if (!fv.empty()) fail("free variable '" + *fv.begin() + "' in main");
}

}  // namespace

Program normalize_binders(const Program& prog) {
  Program out;
  out.inputs = prog.inputs;
  out.outputs = prog.outputs;
  for (const auto& [name, def] : prog.defs)
    out.defs.emplace(name, ProcDef{def.name, def.params, normalize_body(def.body, def.params)});
  out.main = normalize_body(prog.main, {});
  return out;
}

void validate_program(const Program& prog) {
  if (!prog.main) fail("program has no main");
  for (const auto& c : prog.inputs)
    if (prog.outputs.count(c)) fail("channel '" + c + "' declared as both input and output");
  for (const auto& [name, def] : prog.defs) {
    if (name != def.name) fail("definition key '" + name + "' does not match its name '" + def.name + "'");
    check_process(prog, *def.body, "definition of '" + name + "'");
  }
  check_process(prog, *prog.main, "main");
  check_closed(prog);
}

Program parse_program(std::string_view text) {
  Parser parser(tokenize(text));
  Program prog = normalize_binders(parser.parse());
  validate_program(prog);
  return prog;
}

}  // namespace procm
