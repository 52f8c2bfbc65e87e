#include "procm/complexity.hpp"

#include <cctype>
#include <future>
#include <sstream>

#include "json.hpp"

namespace procm {

struct BoundExpr::Node {
  enum class Kind { Const, Var, Add, Mul, Pow, Max };

  Kind kind;
  BigNat value;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const BoundExpr::Node>;
using Kind = BoundExpr::Node::Kind;

NodePtr node(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, BigNat v = 0) {
  return std::make_shared<const BoundExpr::Node>(BoundExpr::Node{k, std::move(v), std::move(a), std::move(b)});
}

class BoundParser {
 public:
  explicit BoundParser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    auto e = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw BoundError("bound expression, column " + std::to_string(i_ + 1) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr sum() {
    auto e = product();
    while (accept('+')) e = node(Kind::Add, e, product());
    return e;
  }
  NodePtr product() {
    auto e = power();
    while (accept('*')) e = node(Kind::Mul, e, power());
    return e;
  }
  NodePtr power() {
    auto base = atom();
    if (!accept('^')) return base;
    auto exp = atom();
    if (base->kind != Kind::Const && exp->kind != Kind::Const) fail("'^' needs a constant base or a constant exponent");
    return node(Kind::Pow, base, exp);
  }
  NodePtr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      BigNat v(std::string(s_.substr(i_, j - i_)));
      i_ = j;
      return node(Kind::Const, nullptr, nullptr, v);
    }
    if (c == '(') {
      ++i_;
      auto e = sum();
      expect(')');
      return e;
    }
    if (s_.substr(i_, 3) == "max") {
      i_ += 3;
      expect('(');
      auto a = sum();
      expect(',');
      auto b = sum();
      expect(')');
      return node(Kind::Max, a, b);
    }
    if (c == 'n' && (i_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[i_ + 1])))) {
      ++i_;
      return node(Kind::Var);
    }
    fail("expected a constant, 'n', 'max(' or '('");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

BigNat eval_node(const BoundExpr::Node& e, const BigNat& n) {
  switch (e.kind) {
    case Kind::Const: return e.value;
    case Kind::Var: return n;
    case Kind::Add: return eval_node(*e.lhs, n) + eval_node(*e.rhs, n);
    case Kind::Mul: return eval_node(*e.lhs, n) * eval_node(*e.rhs, n);
    case Kind::Max: return std::max(eval_node(*e.lhs, n), eval_node(*e.rhs, n));
    case Kind::Pow: {
      BigNat exp = eval_node(*e.rhs, n);
      if (exp > 1'000'000) throw BoundError("exponent too large to evaluate: " + exp.str());
      return boost::multiprecision::pow(eval_node(*e.lhs, n), exp.convert_to<unsigned>());
    }
  }
  return 0;
}

}  // namespace

BoundExpr BoundExpr::parse(std::string_view text) {
  BoundExpr b;
  b.root_ = BoundParser(text).parse();
  b.text_ = std::string(text);
  return b;
}

BigNat BoundExpr::eval(const BigNat& n) const {
  if (!root_) throw BoundError("empty bound expression");
  return eval_node(*root_, n);
}

CostReport cost_report(const Run& r, SpaceMode mode, std::size_t exact_limit) {
  CostReport rep;
  rep.status = r.status;
  rep.steps = r.steps.size();
  for (const auto& s : r.steps) rep.total_weight += s.weight;
  CausalDag d = build_causal_dag(r);
  auto t = time_costs(d);
  std::size_t ordinal = 0;
  for (std::size_t e : d.output_events()) {
    OutputRecord o;
    o.ordinal = ++ordinal;
    o.event = e + 1;
    o.channel = d.event(e).action.channel;
    o.word = d.event(e).action.word;
    o.time = t[e];
    o.mode = mode;
    if (mode == SpaceMode::Exact) {
      try {
        o.space = space_cost(r, d, e, SpaceMode::Exact, exact_limit);
      } catch (const CostLimitExceeded&) {
        o.mode = SpaceMode::Observed;
        o.fallback = true;
      }
    }
    if (o.mode == SpaceMode::Observed) o.space = space_cost(r, d, e, SpaceMode::Observed);
    o.inputs = causal_inputs(d, e);
    for (const auto& [_, w] : o.inputs) o.input_size += w.size() + 1;
    rep.outputs.push_back(std::move(o));
  }
  return rep;
}

namespace {

void check_report(const CostReport& rep, std::size_t script, const BoundExpr& f, const BoundExpr& g,
                  std::vector<Violation>& out) {
  for (const auto& o : rep.outputs) {
    BigNat tf = f.eval(o.input_size);
    BigNat sg = g.eval(o.input_size);
    if (BigNat(o.time) > tf) out.push_back({script, o.ordinal, "time", tf, o.time, {}});
    if (BigNat(o.space) > sg) out.push_back({script, o.ordinal, "space", sg, o.space, {}});
  }
}

}  // namespace

Verdict works_in(const CostReport& rep, const BoundExpr& f, const BoundExpr& g) {
  Verdict v;
  check_report(rep, 0, f, g, v.violations);
  return v;
}

Evidence class_evidence(std::shared_ptr<const Program> prog, const std::vector<Script>& suite, const BoundExpr& f,
                        const BoundExpr& g, const EvidenceOptions& opts) {
  auto one = [&](const Script& s) {
    ScriptedInput in(s);
    Run r = run(prog, in, opts.scheduler, opts.step_limit);
    return cost_report(r, opts.mode, opts.exact_limit);
  };
  Evidence ev;
  if (opts.parallel && suite.size() > 1) {
    std::vector<std::future<CostReport>> jobs;
    for (const auto& s : suite) jobs.push_back(std::async(std::launch::async, one, std::cref(s)));
    for (auto& j : jobs) ev.reports.push_back(j.get());
  } else {
    for (const auto& s : suite) ev.reports.push_back(one(s));
  }
  for (std::size_t k = 0; k < ev.reports.size(); ++k) {
    const CostReport& rep = ev.reports[k];
    if (rep.status.kind != RunStatus::Kind::Completed)
      ev.verdict.violations.push_back({k + 1, 0, "run", 0, 0, rep.status.describe()});
    check_report(rep, k + 1, f, g, ev.verdict.violations);
  }
  return ev;
}

namespace {

std::string mode_label(const OutputRecord& o) {
  return std::string(to_string(o.mode)) + (o.fallback ? "-fallback" : "");
}

}  // namespace

std::string format_report(const CostReport& rep) {
  std::ostringstream os;
  for (const auto& o : rep.outputs) {
    os << "output " << o.ordinal << " ch=" << o.channel << " word=" << o.word.quoted() << " time=" << o.time
       << " space=" << o.space << '(' << mode_label(o) << ") insize=" << o.input_size << " inputs=[";
    for (std::size_t k = 0; k < o.inputs.size(); ++k)
      os << (k ? "," : "") << o.inputs[k].first << ':' << o.inputs[k].second.quoted();
    os << "]\n";
  }
  os << "run status=" << rep.status.describe() << " steps=" << rep.steps << " weight=" << rep.total_weight << '\n';
  return os.str();
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  for (const auto& x : v.violations) {
    os << "violation";
    if (x.script) os << " script=" << x.script;
    if (x.quantity == "run") {
      os << " run " << x.note << '\n';
      continue;
    }
    os << " output=" << x.output << ' ' << x.quantity << ' ' << x.actual << " > " << x.bound << '\n';
  }
  os << "verdict " << (v.pass() ? "pass" : "fail");
  if (!v.pass()) os << " violations=" << v.violations.size();
  os << " (evidence on tested inputs only)\n";
  return os.str();
}

std::string report_json(const std::vector<CostReport>& reports, const Verdict* verdict) {
  using nlohmann::json;
  json doc;
  doc["reports"] = json::array();
  for (const auto& rep : reports) {
    json r;
    r["status"] = rep.status.describe();
    r["steps"] = rep.steps;
    r["total_weight"] = rep.total_weight;
    r["outputs"] = json::array();
    for (const auto& o : rep.outputs) {
      json inputs = json::array();
      for (const auto& [ch, w] : o.inputs) inputs.push_back({{"channel", ch}, {"word", w.bits()}});
      r["outputs"].push_back({{"output", o.ordinal},
                              {"event", o.event},
                              {"channel", o.channel},
                              {"word", o.word.bits()},
                              {"time", o.time},
                              {"space", o.space},
                              {"space_mode", to_string(o.mode)},
                              {"space_fallback", o.fallback},
                              {"insize", o.input_size},
                              {"inputs", inputs}});
    }
    doc["reports"].push_back(r);
  }
  if (verdict) {
    json vs = json::array();
    for (const auto& x : verdict->violations)
      vs.push_back({{"script", x.script},
                    {"output", x.output},
                    {"quantity", x.quantity},
                    {"bound", x.bound.str()},
                    {"actual", x.actual},
                    {"note", x.note}});
    doc["verdict"] = {{"pass", verdict->pass()}, {"violations", vs}, {"scope", "evidence on tested inputs only"}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace procm
