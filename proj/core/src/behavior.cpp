#include "procm/behavior.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace procm {

std::size_t FiniteLts::add_state(bool truncated) {
  edges_.emplace_back();
  truncated_.push_back(truncated ? 1 : 0);
  return edges_.size() - 1;
}

void FiniteLts::add_transition(std::size_t from, Action action, std::size_t to) {
  if (to >= edges_.size()) throw std::out_of_range("transition target is not a state");
  edges_.at(from).push_back({std::move(action), to});
}

std::size_t FiniteLts::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

bool FiniteLts::any_truncated() const {
  return std::any_of(truncated_.begin(), truncated_.end(), [](char c) { return c != 0; });
}

FiniteLts explore_lts(const Program& prog, const std::vector<Word>& input_words, ExploreOptions opts) {
  FiniteLts lts;
  struct Node {
    Configuration config;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  InputChoices choices = [&input_words](const std::string&) { return input_words; };

  auto intern = [&](Configuration c, std::size_t depth) {
    std::string key = config_key(c);
    if (opts.visible_depth) key += "#" + std::to_string(depth);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::size_t id = lts.add_state(nodes.size() >= opts.state_limit);
    index.emplace(std::move(key), id);
    nodes.push_back({std::move(c), depth});
    return id;
  };

  lts.set_initial(intern(initial_config(prog), 0));
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (lts.truncated(s)) continue;
    const Configuration cur = nodes[s].config;
    const std::size_t depth = nodes[s].depth;
    for (const Candidate& cand : enabled(cur, prog, choices)) {
      if (cand.error) continue;
      bool visible = cand.op == Op::Inp || cand.op == Op::Out;
      if (visible && opts.visible_depth && depth >= *opts.visible_depth) continue;
      auto [next, rec] = step(cur, prog, cand);
      std::size_t t = intern(std::move(next), depth + (visible ? 1 : 0));
      lts.add_transition(s, rec.action, t);
    }
  }
  return lts;
}

FiniteLts functional_lts(const FunTable& t, const std::string& in, const std::string& out) {
  FiniteLts lts;
  std::size_t s0 = lts.add_state();
  lts.set_initial(s0);
  for (const auto& [x, y] : t) {
    std::size_t mid = lts.add_state();
    std::size_t end = lts.add_state();
    lts.add_transition(s0, Action::io(in, x), mid);
    lts.add_transition(mid, Action::io(out, y), end);
  }
  return lts;
}

namespace {

// Strongly connected components of the tau-subgraph (iterative Tarjan).
std::vector<std::size_t> tau_sccs(const FiniteLts& l, std::size_t& count) {
  const std::size_t n = l.num_states();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> idx(n, none), low(n, 0), comp(n, none);
  std::vector<char> on(n, 0);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (idx[root] != none) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!work.empty()) {
      auto& [v, k] = work.back();
      const auto& es = l.edges(v);
      if (k < es.size()) {
        const auto& e = es[k++];
        if (e.action.visible) continue;
        std::size_t w = e.target;
        if (idx[w] == none) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          work.emplace_back(w, 0);
        } else if (on[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }
  return comp;
}

// States that can tau-reach a state in `seeds`.
std::set<std::size_t> tau_backward(const FiniteLts& l, const std::vector<std::size_t>& seeds) {
  std::vector<std::vector<std::size_t>> rev(l.num_states());
  for (std::size_t s = 0; s < l.num_states(); ++s)
    for (const auto& e : l.edges(s))
      if (!e.action.visible) rev[e.target].push_back(s);
  std::set<std::size_t> out(seeds.begin(), seeds.end());
  std::deque<std::size_t> q(seeds.begin(), seeds.end());
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop_front();
    for (std::size_t p : rev[x])
      if (out.insert(p).second) q.push_back(p);
  }
  return out;
}

}  // namespace

Divergence divergent_states(const FiniteLts& l) {
  std::size_t ncomp = 0;
  auto comp = tau_sccs(l, ncomp);
  std::vector<std::size_t> members(ncomp, 0);
  for (std::size_t c : comp) ++members[c];
  std::vector<std::size_t> cyclic, cut;
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    bool loop = members[comp[s]] > 1;
    for (const auto& e : l.edges(s))
      if (!e.action.visible && e.target == s) loop = true;
    if (loop) cyclic.push_back(s);
    if (l.truncated(s)) cut.push_back(s);
  }
  Divergence d;
  d.divergent = tau_backward(l, cyclic);
  for (std::size_t s : tau_backward(l, cut))
    if (!d.divergent.count(s)) d.unknown.insert(s);
  return d;
}

const char* to_string(BisimVerdict::Outcome o) {
  switch (o) {
    case BisimVerdict::Outcome::Equivalent: return "equivalent";
    case BisimVerdict::Outcome::NotEquivalent: return "not-equivalent";
    case BisimVerdict::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::string describe(const Action& a) { return a.visible ? a.channel + "(" + a.word.quoted() + ")" : "tau"; }

// Disjoint union of two LTSs in which every state whose only move is a
// single tau step is merged into its successor. Such states are weakly
// bisimilar to their successor and agree with it on divergence.
struct Union {
  std::size_t offset = 0;
  std::vector<std::size_t> rep;
  std::vector<std::vector<FiniteLts::Edge>> edges;
  std::vector<char> div;
};

Union make_union(const FiniteLts& a, const FiniteLts& b) {
  Union u;
  u.offset = a.num_states();
  const std::size_t n = a.num_states() + b.num_states();
  auto edges_of = [&](std::size_t s) -> const std::vector<FiniteLts::Edge>& {
    return s < u.offset ? a.edges(s) : b.edges(s - u.offset);
  };
  auto shift = [&](std::size_t s, std::size_t t) { return s < u.offset ? t : t + u.offset; };

  u.div.assign(n, 0);
  for (std::size_t s : divergent_states(a).divergent) u.div[s] = 1;
  for (std::size_t s : divergent_states(b).divergent) u.div[s + u.offset] = 1;

  const std::size_t none = static_cast<std::size_t>(-1);
  u.rep.assign(n, none);
  auto inert = [&](std::size_t s) { return edges_of(s).size() == 1 && !edges_of(s)[0].action.visible; };
  for (std::size_t s = 0; s < n; ++s) {
    if (u.rep[s] != none) continue;
    std::vector<std::size_t> path;
    std::set<std::size_t> on_path;
    std::size_t cur = s;
    std::size_t r;
    while (true) {
      if (u.rep[cur] != none) {
        r = u.rep[cur];
        break;
      }
      if (!inert(cur) || on_path.count(cur)) {
        r = cur;
        break;
      }
      path.push_back(cur);
      on_path.insert(cur);
      cur = shift(cur, edges_of(cur)[0].target);
    }
    for (std::size_t p : path) u.rep[p] = r;
    u.rep[r] = r;
  }
  u.edges.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (u.rep[s] != s) continue;
    for (const auto& e : edges_of(s)) u.edges[s].push_back({e.action, u.rep[shift(s, e.target)]});
  }
  return u;
}

}  // namespace

BisimVerdict weak_bisim(const FiniteLts& a, const FiniteLts& b, bool divergence_sensitive) {
  BisimVerdict v;
  v.divergence_sensitive = divergence_sensitive;
  if (a.any_truncated() || b.any_truncated()) {
    v.outcome = BisimVerdict::Outcome::Inconclusive;
    v.reason = "exploration was truncated at the state limit";
    return v;
  }
  Union u = make_union(a, b);
  const std::size_t n = u.rep.size();
  std::vector<std::size_t> reps;
  for (std::size_t s = 0; s < n; ++s)
    if (u.rep[s] == s) reps.push_back(s);

  std::map<std::string, int> action_ids{{"", 0}};
  std::vector<std::string> action_names{"tau"};
  auto action_id = [&](const Action& act) {
    if (!act.visible) return 0;
    std::string key = act.channel + '\x01' + act.word.bits();
    auto [it, fresh] = action_ids.emplace(key, static_cast<int>(action_ids.size()));
    if (fresh) action_names.push_back(describe(act));
    return it->second;
  };

  // Tau closure and saturated weak moves (tau moves include staying put).
  std::vector<std::vector<std::size_t>> closure(n);
  for (std::size_t s : reps) {
    std::set<std::size_t> seen{s};
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (const auto& e : u.edges[x])
        if (!e.action.visible && seen.insert(e.target).second) q.push_back(e.target);
    }
    closure[s].assign(seen.begin(), seen.end());
  }
  std::vector<std::vector<std::pair<int, std::size_t>>> weak(n);
  for (std::size_t s : reps) {
    std::set<std::pair<int, std::size_t>> moves;
    for (std::size_t x : closure[s]) {
      moves.emplace(0, x);
      for (const auto& e : u.edges[x]) {
        if (!e.action.visible) continue;
        int id = action_id(e.action);
        for (std::size_t y : closure[e.target]) moves.emplace(id, y);
      }
    }
    weak[s].assign(moves.begin(), moves.end());
  }

  std::vector<std::size_t> block(n, 0);
  std::size_t blocks = 1;
  if (divergence_sensitive) {
    std::set<std::size_t> used;
    for (std::size_t s : reps) used.insert(block[s] = u.div[s] ? 1 : 0);
    blocks = used.size();
  }
  using Signature = std::pair<std::size_t, std::vector<std::pair<int, std::size_t>>>;
  auto signature = [&](std::size_t s) {
    std::set<std::pair<int, std::size_t>> moves;
    for (const auto& [act, t] : weak[s]) moves.emplace(act, block[t]);
    return Signature{block[s], {moves.begin(), moves.end()}};
  };
  while (true) {
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n, 0);
    for (std::size_t s : reps) next[s] = ids.emplace(signature(s), ids.size()).first->second;
    bool stable = ids.size() == blocks;
    block = std::move(next);
    blocks = ids.size();
    if (stable) break;
  }

  std::size_t ia = u.rep[a.initial()];
  std::size_t ib = u.rep[b.initial() + u.offset];
  if (block[ia] == block[ib]) {
    v.outcome = BisimVerdict::Outcome::Equivalent;
    for (std::size_t x = 0; x < u.offset && v.relation.size() < 1'000'000; ++x)
      for (std::size_t y = 0; y < b.num_states() && v.relation.size() < 1'000'000; ++y)
        if (block[u.rep[x]] == block[u.rep[y + u.offset]]) v.relation.emplace_back(x, y);
    return v;
  }

  v.outcome = BisimVerdict::Outcome::NotEquivalent;
  if (divergence_sensitive && u.div[ia] != u.div[ib]) {
    v.reason = std::string("initial states disagree on divergence: ") + (u.div[ia] ? "left" : "right") +
               " diverges, the other does not";
    return v;
  }
  auto moves_of = [&](std::size_t s) {
    std::set<std::pair<int, std::size_t>> m;
    for (const auto& [act, t] : weak[s]) m.emplace(act, block[t]);
    return m;
  };
  auto ma = moves_of(ia), mb = moves_of(ib);
  auto unmatched = [&](const std::set<std::pair<int, std::size_t>>& mine,
                       const std::set<std::pair<int, std::size_t>>& theirs, bool visible) -> std::optional<int> {
    for (const auto& m : mine)
      if ((m.first != 0) == visible && !theirs.count(m)) return m.first;
    return std::nullopt;
  };
  for (bool visible : {true, false}) {
    for (int side = 0; side < 2; ++side) {
      auto act = side == 0 ? unmatched(ma, mb, visible) : unmatched(mb, ma, visible);
      if (!act) continue;
      std::string who = side == 0 ? "left" : "right", other = side == 0 ? "right" : "left";
      v.reason = visible ? who + " can perform " + action_names[static_cast<std::size_t>(*act)] +
                               " to a state " + other + " cannot match"
                         : who + " can silently reach a state " + other + " cannot match";
      return v;
    }
  }
  v.reason = "initial states fall in different bisimulation classes";
  return v;
}

BisimVerdict check_functional(const Program& prog, const FunTable& t, std::size_t state_limit, const std::string& in,
                              const std::string& out) {
  std::vector<Word> inputs;
  for (const auto& [x, _] : t) inputs.push_back(x);
  ExploreOptions opts;
  opts.state_limit = state_limit;
  FiniteLts got = explore_lts(prog, inputs, opts);
  return weak_bisim(got, functional_lts(t, in, out), true);
}

}  // namespace procm
