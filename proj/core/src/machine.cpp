#include "procm/machine.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "procm/printer.hpp"

namespace procm {

const char* to_string(Op op) {
  switch (op) {
    case Op::Nil: return "Nil";
    case Op::Rec: return "Rec";
    case Op::Snd: return "Snd";
    case Op::Rcv: return "Rcv";
    case Op::Out: return "Out";
    case Op::Inp: return "Inp";
    case Op::Cnd: return "Cnd";
    case Op::Spn: return "Spn";
  }
  return "?";
}

bool is_communication(Op op) { return op == Op::Snd || op == Op::Rcv || op == Op::Out || op == Op::Inp; }

std::string to_string(const Subject& s) {
  switch (s.kind) {
    case Subject::Kind::None: return "-";
    case Subject::Kind::Queue: return "[" + s.key.quoted() + "]";
    case Subject::Kind::ExternalIn: return s.channel + "?";
    case Subject::Kind::ExternalOut: return s.channel + "!";
  }
  return "?";
}

const ProcessorState* Configuration::find(const Word& tag) const {
  for (const auto& p : processors)
    if (p.tag == tag) return &p;
  return nullptr;
}

bool operator==(const Configuration& a, const Configuration& b) {
  if (a.processors.size() != b.processors.size() || a.queues != b.queues) return false;
  for (std::size_t i = 0; i < a.processors.size(); ++i) {
    const auto& x = a.processors[i];
    const auto& y = b.processors[i];
    if (x.tag != y.tag || !(x.env == y.env)) return false;
    if (x.process != y.process && !equal(*x.process, *y.process)) return false;
  }
  return true;
}

std::string config_key(const Configuration& c) {
  std::ostringstream os;
  for (const auto& p : c.processors) {
    os << p.tag.bits() << '@' << static_cast<const void*>(p.process.get()) << '{';
    for (const auto& [x, w] : p.env.entries()) os << x << '=' << w.bits() << ',';
    os << '}';
  }
  os << '|';
  for (const auto& [k, q] : c.queues) {
    os << k.bits() << ':';
    for (const auto& w : q) os << w.bits() << ',';
    os << ';';
  }
  return os.str();
}

std::string describe(const Configuration& c) {
  std::ostringstream os;
  for (const auto& p : c.processors) {
    os << "proc " << p.tag.quoted() << " {";
    bool first = true;
    for (const auto& [x, w] : p.env.entries()) {
      os << (first ? "" : ", ") << x << "=" << w.quoted();
      first = false;
    }
    os << "} " << to_source(*p.process) << '\n';
  }
  for (const auto& [k, q] : c.queues) {
    os << "queue " << k.quoted() << " [";
    for (std::size_t i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i].quoted();
    os << "]\n";
  }
  return os.str();
}

std::uint64_t queue_size(const std::deque<Word>& q) {
  std::uint64_t total = 0;
  for (const auto& w : q) total += w.size();
  return total;
}

std::uint64_t config_size(const Configuration& c) {
  std::uint64_t total = 0;
  for (const auto& [_, q] : c.queues) total += queue_size(q);
  for (const auto& p : c.processors) total += p.env.size();
  return total;
}

ScriptedInput::ScriptedInput(std::map<std::string, std::vector<Word>> script) {
  for (auto& [ch, words] : script) queues_[ch].assign(words.begin(), words.end());
}

std::optional<Word> ScriptedInput::peek(const std::string& channel) {
  auto it = queues_.find(channel);
  if (it == queues_.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

void ScriptedInput::consume(const std::string& channel) {
  auto it = queues_.find(channel);
  if (it != queues_.end() && !it->second.empty()) it->second.pop_front();
}

std::size_t ScriptedInput::remaining() const {
  std::size_t n = 0;
  for (const auto& [_, q] : queues_) n += q.size();
  return n;
}

std::optional<Word> InteractiveInput::peek(const std::string& channel) {
  if (closed_[channel]) return std::nullopt;
  auto it = pending_.find(channel);
  if (it == pending_.end() || !it->second) {
    auto w = source_(channel);
    if (!w) {
      closed_[channel] = true;
      return std::nullopt;
    }
    pending_[channel] = w;
    return w;
  }
  return it->second;
}

void InteractiveInput::consume(const std::string& channel) { pending_.erase(channel); }

Configuration initial_config(const Program& prog) {
  Configuration c;
  c.processors.push_back({prog.main, Environment(), Word()});
  return c;
}

namespace {

Candidate make(std::size_t i, const ProcessorState& p, Op op) { return Candidate{i, p.tag, op, Word(), std::nullopt, {}}; }

Candidate failure(std::size_t i, const ProcessorState& p, Op op, const EvalError& e) {
  return Candidate{i, p.tag, op, Word(), e.kind(), e.what()};
}

void candidates_for(std::size_t i, const ProcessorState& p, const Configuration& c, const InputChoices& inputs,
                    std::vector<Candidate>& out) {
  const Process& proc = *p.process;
  Op op = Op::Nil;
  try {
    switch (proc.kind) {
      case Process::Kind::Nil: out.push_back(make(i, p, Op::Nil)); return;
      case Process::Kind::Par: out.push_back(make(i, p, Op::Spn)); return;
      case Process::Kind::Call:
        op = Op::Rec;
        for (const auto& a : proc.args) (void)eval_str(*a, p.env);
        out.push_back(make(i, p, op));
        return;
      case Process::Kind::Cond:
        op = Op::Cnd;
        (void)eval_bool(*proc.cond, p.env);
        out.push_back(make(i, p, op));
        return;
      case Process::Kind::Send:
        if (proc.channel.kind == ChannelRef::Kind::Internal) {
          op = Op::Snd;
          (void)eval_str(*proc.channel.key, p.env);
        } else {
          op = Op::Out;
        }
        (void)eval_str(*proc.payload, p.env);
        out.push_back(make(i, p, op));
        return;
      case Process::Kind::Recv:
        if (proc.channel.kind == ChannelRef::Kind::Internal) {
          op = Op::Rcv;
          Word key = eval_str(*proc.channel.key, p.env);
          if (c.queues.count(key)) out.push_back(make(i, p, op));
        } else {
          for (auto& w : inputs(proc.channel.name)) {
            Candidate cand = make(i, p, Op::Inp);
            cand.input = std::move(w);
            out.push_back(std::move(cand));
          }
        }
        return;
    }
  } catch (const EvalError& e) {
    out.push_back(failure(i, p, op, e));
  }
}

}  // namespace

std::vector<Candidate> enabled(const Configuration& c, const Program&, const InputChoices& inputs) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < c.processors.size(); ++i) candidates_for(i, c.processors[i], c, inputs, out);
  return out;
}

std::vector<Candidate> enabled(const Configuration& c, const Program& prog, InputProvider& in) {
  InputChoices choices = [&in](const std::string& ch) {
    auto w = in.peek(ch);
    return w ? std::vector<Word>{*w} : std::vector<Word>{};
  };
  return enabled(c, prog, choices);
}

TransitionRecord apply(Configuration& next, const Program& prog, const Candidate& cand, std::uint64_t size) {
  if (cand.error) throw EvalError(*cand.error, cand.message);
  auto& procs = next.processors;
  ProcessorState& p = procs.at(cand.processor);
  const Process& proc = *p.process;
  TransitionRecord rec;
  rec.op = cand.op;
  rec.tag = p.tag;
  size -= p.env.size();

  switch (proc.kind) {
    case Process::Kind::Nil:
      rec.weight = 1;
      procs.erase(procs.begin() + static_cast<std::ptrdiff_t>(cand.processor));
      rec.post_size = size;
      return rec;
    case Process::Kind::Call: {
      const ProcDef* def = prog.find(proc.name);
      if (!def) throw std::logic_error("call to undefined identifier " + proc.name);
      Environment fresh;
      rec.weight = 1;
      for (std::size_t k = 0; k < proc.args.size(); ++k) {
        rec.weight += expr_time_cost(*proc.args[k], p.env);
        fresh.bind(def->params[k], eval_str(*proc.args[k], p.env));
      }
      p.env = std::move(fresh);
      p.process = def->body;
      break;
    }
    case Process::Kind::Send: {
      Word value = eval_str(*proc.payload, p.env);
      rec.weight = 1 + expr_time_cost(*proc.payload, p.env);
      if (proc.channel.kind == ChannelRef::Kind::Internal) {
        Word key = eval_str(*proc.channel.key, p.env);
        rec.weight += expr_time_cost(*proc.channel.key, p.env);
        rec.subject = Subject::queue(key);
        size += value.size();
        next.queues[key].push_back(std::move(value));
      } else {
        rec.subject = Subject::external_out(proc.channel.name);
        rec.action = Action::io(proc.channel.name, std::move(value));
      }
      p.process = proc.first;
      break;
    }
    case Process::Kind::Recv: {
      Word value;
      if (proc.channel.kind == ChannelRef::Kind::Internal) {
        Word key = eval_str(*proc.channel.key, p.env);
        auto it = next.queues.find(key);
        if (it == next.queues.end()) throw std::logic_error("receive from empty queue");
        value = it->second.front();
        it->second.pop_front();
        if (it->second.empty()) next.queues.erase(it);
        size -= value.size();
        rec.weight = 1 + expr_time_cost(*proc.channel.key, p.env) + value.size();
        rec.subject = Subject::queue(key);
      } else {
        value = cand.input;
        rec.weight = 1 + value.size();
        rec.subject = Subject::external_in(proc.channel.name);
        rec.action = Action::io(proc.channel.name, value);
      }
      p.env.bind(proc.name, std::move(value));
      p.process = proc.first;
      break;
    }
    case Process::Kind::Cond:
      rec.weight = 1 + expr_time_cost(*proc.cond, p.env);
      p.process = eval_bool(*proc.cond, p.env) ? proc.first : proc.second;
      break;
    case Process::Kind::Par: {
      rec.weight = 1 + p.env.size();
      ProcessorState left{proc.first, p.env, p.tag.concat(Word("0"))};
      ProcessorState right{proc.second, p.env, p.tag.concat(Word("1"))};
      auto pos = procs.begin() + static_cast<std::ptrdiff_t>(cand.processor);
      *pos = std::move(left);
      procs.insert(pos + 1, std::move(right));
      rec.post_size = size + 2 * (rec.weight - 1);
      return rec;
    }
  }
  rec.post_size = size + p.env.size();
  return rec;
}

std::pair<Configuration, TransitionRecord> step(const Configuration& c, const Program& prog, const Candidate& cand) {
  Configuration next = c;
  TransitionRecord rec = apply(next, prog, cand, config_size(c));
  return {std::move(next), std::move(rec)};
}

std::optional<std::size_t> find_candidate(const std::vector<Candidate>& cands, const Word& tag, Op op,
                                          const Word& input) {
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].tag == tag && cands[i].op == op && (op != Op::Inp || cands[i].input == input)) return i;
  return std::nullopt;
}

std::string RunStatus::describe() const {
  switch (kind) {
    case Kind::Completed: return "completed";
    case Kind::StepLimit: return "step-limit";
    case Kind::RuntimeError:
      return std::string("runtime-error(") + (error ? to_string(*error) : "unknown") + ")" +
             (message.empty() ? "" : ": " + message);
  }
  return "?";
}

Run run(std::shared_ptr<const Program> prog, InputProvider& in, Scheduler policy, std::size_t step_limit) {
  Run r;
  r.program = prog;
  r.initial = initial_config(*prog);
  r.sizes.push_back(config_size(r.initial));
  Configuration cur = r.initial;
  std::mt19937_64 rng(policy.seed);

  InputChoices choices = [&in](const std::string& ch) {
    auto w = in.peek(ch);
    return w ? std::vector<Word>{*w} : std::vector<Word>{};
  };
  std::vector<Candidate> cands;
  while (true) {
    cands.clear();
    if (policy.kind == Scheduler::Kind::Random) {
      cands = enabled(cur, *prog, choices);
    } else {
      // processors are sorted by tag: the first enabled one has the least tag
      for (std::size_t i = 0; i < cur.processors.size() && cands.empty(); ++i)
        candidates_for(i, cur.processors[i], cur, choices, cands);
    }
    if (cands.empty()) {
      r.status.kind = RunStatus::Kind::Completed;
      break;
    }
    if (r.steps.size() >= step_limit) {
      r.status.kind = RunStatus::Kind::StepLimit;
      break;
    }
    std::size_t pick = 0;
    if (policy.kind == Scheduler::Kind::Random)
      pick = std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng);
    const Candidate& cand = cands[pick];
    if (cand.error) {
      r.status = {RunStatus::Kind::RuntimeError, cand.error, "processor " + cand.tag.quoted() + ": " + cand.message};
      break;
    }
    TransitionRecord rec = apply(cur, *prog, cand, r.sizes.back());
    if (cand.op == Op::Inp) in.consume(rec.action.channel);
    r.sizes.push_back(rec.post_size);
    r.steps.push_back(std::move(rec));
  }
  r.final = std::move(cur);
  return r;
}

}  // namespace procm
