#include "procm/causality.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace procm {

bool tags_comparable(const Word& a, const Word& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

namespace {

bool queue_op(Op op) { return op == Op::Snd || op == Op::Rcv; }
bool external_op(Op op) { return op == Op::Out || op == Op::Inp; }

}  // namespace

bool independent(const EventType& a, const EventType& b) {
  if (tags_comparable(a.tag, b.tag)) return false;
  if (!is_communication(a.op) || !is_communication(b.op)) return true;
  if (queue_op(a.op) != queue_op(b.op)) return true;
  if (queue_op(a.op)) return !(a.subject.key == b.subject.key);
  return a.op != b.op || a.subject.channel != b.subject.channel;
}

CausalDag::CausalDag(std::vector<Event> events, std::vector<std::vector<std::size_t>> preds,
                     std::vector<std::uint64_t> sizes)
    : events_(std::move(events)), preds_(std::move(preds)), sizes_(std::move(sizes)) {}

bool CausalDag::leq(std::size_t a, std::size_t b) const {
  if (a == b) return true;
  if (a > b) return false;
  std::vector<char> seen(b + 1, 0);
  std::vector<std::size_t> stack{b};
  seen[b] = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t p : preds_[x]) {
      if (p == a) return true;
      if (p > a && !seen[p]) {
        seen[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return false;
}

std::vector<std::size_t> CausalDag::downset(std::size_t e) const {
  std::vector<char> in(e + 1, 0);
  in[e] = 1;
  for (std::size_t x = e + 1; x-- > 0;) {
    if (!in[x]) continue;
    for (std::size_t p : preds_[x]) in[p] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x <= e; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

std::vector<std::size_t> CausalDag::output_events() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < events_.size(); ++i)
    if (events_[i].kind == Event::Kind::Output) out.push_back(i);
  return out;
}

CausalDag build_causal_dag(const Run& r) {
  std::vector<Event> events;
  std::vector<std::vector<std::size_t>> preds;
  std::unordered_map<Word, std::size_t> last_by_tag;
  std::map<Word, std::size_t> last_by_queue;
  std::map<std::pair<Op, std::string>, std::size_t> last_by_channel;

  for (std::size_t j = 0; j < r.steps.size(); ++j) {
    const TransitionRecord& rec = r.steps[j];
    Event ev;
    ev.index = j + 1;
    ev.etype = EventType::of(rec);
    ev.kind = rec.op == Op::Inp ? Event::Kind::Input : rec.op == Op::Out ? Event::Kind::Output : Event::Kind::Internal;
    ev.action = rec.action;

    std::vector<std::size_t> ps;
    // Earlier events with comparable tags belong to ancestors of this
    // processor and form a chain, so the latest one covers them all.
    std::optional<std::size_t> lineage;
    for (std::size_t len = 0; len <= rec.tag.size(); ++len) {
      auto it = last_by_tag.find(Word(rec.tag.bits().substr(0, len)));
      if (it != last_by_tag.end() && (!lineage || it->second > *lineage)) lineage = it->second;
    }
    if (lineage) ps.push_back(*lineage);
    if (queue_op(rec.op)) {
      auto it = last_by_queue.find(rec.subject.key);
      if (it != last_by_queue.end()) ps.push_back(it->second);
      last_by_queue[rec.subject.key] = j;
    } else if (external_op(rec.op)) {
      auto key = std::make_pair(rec.op, rec.subject.channel);
      auto it = last_by_channel.find(key);
      if (it != last_by_channel.end()) ps.push_back(it->second);
      last_by_channel[key] = j;
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    last_by_tag[rec.tag] = j;
    events.push_back(std::move(ev));
    preds.push_back(std::move(ps));
  }
  return CausalDag(std::move(events), std::move(preds), r.sizes);
}

std::vector<std::uint64_t> time_costs(const CausalDag& d) {
  std::vector<std::uint64_t> t(d.size(), 0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    std::uint64_t best = 0;
    for (std::size_t p : d.preds(j)) best = std::max(best, t[p]);
    t[j] = best + d.event(j).etype.weight;
  }
  return t;
}

std::uint64_t time_cost(const CausalDag& d, std::size_t e) {
  std::vector<std::uint64_t> t(e + 1, 0);
  for (std::size_t j : d.downset(e)) {
    std::uint64_t best = 0;
    for (std::size_t p : d.preds(j)) best = std::max(best, t[p]);
    t[j] = best + d.event(j).etype.weight;
  }
  return t[e];
}

std::uint64_t oracle_time_cost(const CausalDag& d, std::size_t e, std::size_t limit) {
  // below[j][i]: i <= j in the closure of pairwise dependence.
  std::vector<std::vector<char>> below(e + 1, std::vector<char>(e + 1, 0));
  for (std::size_t j = 0; j <= e; ++j) {
    below[j][j] = 1;
    for (std::size_t i = 0; i < j; ++i) {
      if (independent(d.event(i).etype, d.event(j).etype)) continue;
      for (std::size_t k = 0; k <= i; ++k)
        if (below[i][k]) below[j][k] = 1;
    }
  }
  std::vector<std::size_t> down;
  for (std::size_t i = 0; i < e; ++i)
    if (below[e][i]) down.push_back(i);
  if (down.size() + 1 > limit)
    throw CostLimitExceeded("downset of event " + std::to_string(e + 1) + " has " + std::to_string(down.size() + 1) +
                            " events, limit " + std::to_string(limit));

  std::uint64_t best = 0;
  const std::size_t n = down.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> chain;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) chain.push_back(down[k]);
    bool ok = true;
    for (std::size_t a = 0; ok && a < chain.size(); ++a)
      for (std::size_t b = a + 1; ok && b < chain.size(); ++b)
        ok = below[chain[b]][chain[a]];
    if (!ok) continue;
    std::uint64_t sum = d.event(e).etype.weight;
    for (std::size_t x : chain) sum += d.event(x).etype.weight;
    best = std::max(best, sum);
  }
  return best;
}

const char* to_string(SpaceMode m) { return m == SpaceMode::Exact ? "exact" : "observed"; }

namespace {

InputChoices choices_for(const CausalDag& d, const std::vector<std::size_t>& evs) {
  std::map<std::string, std::vector<Word>> words;
  for (std::size_t x : evs) {
    const Event& ev = d.event(x);
    if (ev.kind == Event::Kind::Input) words[ev.action.channel].push_back(ev.action.word);
  }
  return [words = std::move(words)](const std::string& ch) {
    auto it = words.find(ch);
    return it == words.end() ? std::vector<Word>{} : it->second;
  };
}

Configuration apply(const Run& r, const CausalDag& d, const Configuration& c, std::size_t x, const InputChoices& ch) {
  const EventType& et = d.event(x).etype;
  auto cands = enabled(c, *r.program, ch);
  auto pos = find_candidate(cands, et.tag, et.op, d.event(x).action.word);
  if (!pos || cands[*pos].error)
    throw ReplayFailure("event " + std::to_string(x + 1) + " (" + to_string(et.op) + " at " + et.tag.quoted() +
                        ") is not enabled during replay");
  return step(c, *r.program, cands[*pos]).first;
}

}  // namespace

std::vector<Configuration> replay(const Run& r, const CausalDag& d, const std::vector<std::size_t>& order) {
  InputChoices ch = choices_for(d, order);
  std::vector<Configuration> out{r.initial};
  for (std::size_t x : order) out.push_back(apply(r, d, out.back(), x, ch));
  return out;
}

std::uint64_t space_cost(const Run& r, const CausalDag& d, std::size_t e, SpaceMode mode, std::size_t limit) {
  std::vector<std::size_t> down = d.downset(e);
  if (mode == SpaceMode::Observed) {
    if (down.size() == e + 1)
      return *std::max_element(d.sizes().begin(), d.sizes().begin() + static_cast<std::ptrdiff_t>(e + 2));
    std::uint64_t best = 0;
    for (const auto& c : replay(r, d, down)) best = std::max(best, config_size(c));
    return best;
  }

  const std::size_t n = down.size();
  if (n > limit)
    throw CostLimitExceeded("downset of event " + std::to_string(e + 1) + " has " + std::to_string(n) +
                            " events, limit " + std::to_string(limit));
  std::vector<std::uint64_t> need(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (d.leq(down[b], down[a])) need[a] |= std::uint64_t{1} << b;

  InputChoices ch = choices_for(d, down);
  std::unordered_map<std::uint64_t, Configuration> ideals;
  std::vector<std::uint64_t> frontier{0};
  ideals.emplace(0, r.initial);
  std::uint64_t best = config_size(r.initial);
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : frontier) {
      const Configuration cur = ideals.at(mask);
      for (std::size_t a = 0; a < n; ++a) {
        std::uint64_t bit = std::uint64_t{1} << a;
        if ((mask & bit) || (need[a] & ~mask)) continue;
        Configuration c = apply(r, d, cur, down[a], ch);
        auto [it, fresh] = ideals.try_emplace(mask | bit, std::move(c));
        if (fresh) {
          best = std::max(best, config_size(it->second));
          next.push_back(mask | bit);
        } else if (!(it->second == c)) {
          throw ReplayFailure("two linearizations of one ideal reach different configurations");
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

std::vector<std::pair<std::string, Word>> causal_inputs(const CausalDag& d, std::size_t e) {
  std::vector<std::pair<std::string, Word>> out;
  for (std::size_t x : d.downset(e))
    if (d.event(x).kind == Event::Kind::Input) out.emplace_back(d.event(x).action.channel, d.event(x).action.word);
  return out;
}

std::uint64_t input_size(const CausalDag& d, std::size_t e) {
  if (d.event(e).kind != Event::Kind::Output)
    throw std::invalid_argument("event " + std::to_string(e + 1) + " is not an output event");
  std::uint64_t total = 0;
  for (const auto& [_, w] : causal_inputs(d, e)) total += w.size() + 1;
  return total;
}

}  // namespace procm
