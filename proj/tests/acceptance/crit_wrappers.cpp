#include <functional>
#include <random>
#include <sstream>

#include "common.hpp"
#include "oracles.hpp"
#include "procm/causality.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"

namespace acc {

using namespace procm;

namespace {

struct OutCost {
  Word word;
  std::uint64_t time = 0, space = 0, insize = 0;
  std::size_t inputs = 0;  // input events below
  Word last_input;
};

std::vector<OutCost> output_costs(const Run& r) {
  CausalDag d = build_causal_dag(r);
  std::vector<OutCost> out;
  for (auto e : d.output_events()) {
    OutCost c;
    c.word = d.event(e).action.word;
    c.time = time_cost(d, e);
    c.space = space_cost(r, d, e, SpaceMode::Observed);
    c.insize = input_size(d, e);
    auto ins = causal_inputs(d, e);
    c.inputs = ins.size();
    if (!ins.empty()) c.last_input = ins.back().second;
    out.push_back(c);
  }
  return out;
}

// Monotone envelope m -> max over samples with size <= m, floored at m.
struct Envelope {
  std::map<std::uint64_t, std::uint64_t> at;

  void add(std::uint64_t size, std::uint64_t value) { at[size] = std::max(at[size], value); }
  std::uint64_t operator()(std::uint64_t m) const {
    std::uint64_t best = m;
    for (const auto& [size, v] : at)
      if (size <= m) best = std::max(best, v);
    return best;
  }
};

// Tracks max of value / bound as an exact fraction.
struct Worst {
  Ratio r{0, 1};
  void add(std::uint64_t value, std::uint64_t bound) { r = std::max(r, Ratio{value, bound}); }
};

std::string words_of_length(std::size_t n, std::size_t bits) {
  std::string w;
  for (std::size_t k = 0; k < n; ++k) w += (bits >> k & 1) ? '1' : '0';
  return w;
}

std::vector<std::string> all_words(std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n <= max_len; ++n)
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) out.push_back(words_of_length(n, b));
  return out;
}

}  // namespace

Outcome server_theorem() {
  TmSpec inc = parse_tm(read_file(fixture("machines/inc.tm")));
  Program p = encode_tm(inc);
  auto plain = share(p);
  auto server = share(serverize(p));

  // f and g of the unwrapped program, by input size |s|+1.
  Envelope f, g;
  for (const auto& s : all_words(6))
    for (const auto& o : output_costs(execute(plain, {{"i", {Word(s)}}}))) {
      f.add(o.insize, o.time);
      g.add(o.insize, o.space);
    }

  std::vector<std::vector<std::string>> requests;
  for (const auto& a : all_words(2))
    for (const auto& b : all_words(2))
      for (const auto& c : all_words(2)) requests.push_back({a, b, c});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 40; ++k) {
    std::vector<std::string> req;
    for (int j = 0; j < 3; ++j) req.push_back(words_of_length(rng() % 7, rng()));
    requests.push_back(req);
  }

  Worst time, space;
  for (const auto& req : requests) {
    std::vector<Word> script;
    for (const auto& s : req) script.emplace_back(s);
    Run r = execute(server, {{"i", script}});
    auto outs = output_costs(r);
    if (outs.size() != 3) return {false, "server gave " + std::to_string(outs.size()) + " answers"};
    for (const auto& o : outs) {
      // The k-th answer has exactly the first k requests below it.
      std::size_t k = o.inputs;
      if (k < 1 || k > 3 || o.last_input != Word(req[k - 1]))
        return {false, "answer not attributable to a request"};
      if (o.word.bits() != *oracle::run_tm(inc, req[k - 1]).output)
        return {false, "wrong answer to request \"" + req[k - 1] + "\""};
      std::uint64_t stored = 0;
      for (std::size_t j = 0; j < k; ++j) stored += 1 + req[j].size();
      std::uint64_t n = 1 + req[k - 1].size();
      time.add(o.time, f(n) + stored);
      space.add(o.space, g(n) + stored);
    }
  }
  const Ratio frozen_time{599, 156}, frozen_space{11, 5};
  std::ostringstream detail;
  detail << requests.size() << " request triples answered correctly; t ratio " << time.r.str() << " <= "
         << frozen_time.str() << ", s ratio " << space.r.str() << " <= " << frozen_space.str();
  return {time.r <= frozen_time && space.r <= frozen_space, detail.str()};
}

namespace {

using Table = std::map<std::string, std::string>;  // |s| <= 4

Table random_table(std::mt19937_64& rng) {
  Table h;
  h[""] = words_of_length(rng() % 2, rng());
  for (const auto& s : all_words(4)) {
    if (s.empty()) continue;
    h[s] = h[s.substr(0, s.size() - 1)] + words_of_length(rng() % 3, rng());
  }
  return h;
}

std::vector<Table> tables() {
  std::vector<Table> out;
  Table id, one, constant;
  for (const auto& s : all_words(4)) {
    id[s] = s;
    one[s] = "1" + s;
    constant[s] = "01";
  }
  out = {id, one, constant};
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) out.push_back(random_table(rng));
  return out;
}

ProcessPtr emit(const std::string& w) {
  return Process::send(ChannelRef::external_out("o"), lit(Word(w)), Process::nil());
}

// Offline implementation: main := i?x. dispatch on x.
Program offline_impl(const Table& h) {
  std::map<Word, ProcessPtr> cases;
  for (const auto& [s, v] : h) cases[Word(s)] = emit(v);
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  p.main = Process::recv(ChannelRef::external_in("i"), "x", dispatch(var("x"), cases, Process::nil()));
  return p;
}

// Online implementation: a definition per prefix read so far.
Program online_impl(const Table& h) {
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  auto name = [](const std::string& u) { return "Q" + std::string(u.empty() ? "e" : "_" + u); };
  for (const auto& [u, v] : h) {
    std::string diff = u.empty() ? v : v.substr(h.at(u.substr(0, u.size() - 1)).size());
    ProcessPtr body = emit(diff);
    if (u.size() < 4) {
      auto next = Process::if_else(BoolExpr::is_empty(var("b")), Process::call(name(u + "0"), {}),
                                   Process::call(name(u + "1"), {}));
      body = Process::par(body, Process::recv(ChannelRef::external_in("i"), "b", next));
    }
    p.defs[name(u)] = ProcDef{name(u), {}, body};
  }
  p.main = Process::call(name(""), {});
  return p;
}

std::vector<Word> as_bits(const std::string& x) {
  std::vector<Word> bits;
  for (char c : x) bits.emplace_back(c == '1' ? "1" : "");
  return bits;
}

}  // namespace

Outcome online_offline() {
  Worst off_time, off_space, on_time, on_space;
  std::size_t runs = 0;
  for (const auto& h : tables()) {
    auto p = share(offline_impl(h)), q = share(online_impl(h));
    auto off = share(offline_from_online(*q)), on = share(online_from_offline(*p));

    Envelope fp, gp, fq, gq;
    for (const auto& x : all_words(4)) {
      for (const auto& o : output_costs(execute(p, {{"i", {Word(x)}}}))) {
        fp.add(o.insize, o.time);
        gp.add(o.insize, o.space);
      }
      for (const auto& o : output_costs(execute(q, {{"i", as_bits(x)}}))) {
        fq.add(o.insize, o.time);
        gq.add(o.insize, o.space);
      }
    }

    for (const auto& x : all_words(4)) {
      // offline from online: one output h(x)
      auto outs = output_costs(execute(off, {{"i", {Word(x)}}}));
      if (outs.size() != 1 || outs[0].word.bits() != h.at(x))
        return {false, "offline wrapper wrong on \"" + x + "\""};
      std::uint64_t n = outs[0].insize;
      off_time.add(outs[0].time, n * fq(2 * n));
      off_space.add(outs[0].space, gq(2 * n));

      // online from offline: the k-th output completes h of the first k bits
      auto ons = output_costs(execute(on, {{"i", as_bits(x)}}));
      if (ons.size() != x.size() + 1) return {false, "online wrapper gave " + std::to_string(ons.size()) + " outputs on \"" + x + "\""};
      std::vector<std::string> by_k(x.size() + 1);
      for (const auto& o : ons) {
        if (o.inputs > x.size()) return {false, "online output not attributable"};
        by_k[o.inputs] = o.word.bits();
        std::uint64_t k = o.inputs;
        on_time.add(o.time, (k + 1) * fp(k + 1));
        on_space.add(o.space, gp(k + 1) + k + 1);
      }
      std::string acc;
      for (std::size_t k = 0; k <= x.size(); ++k) {
        acc += by_k[k];
        if (acc != h.at(x.substr(0, k))) return {false, "online outputs do not concatenate to h on \"" + x + "\""};
      }
      runs += 2;
    }
  }
  const Ratio f_off_t{85, 16}, f_off_s{5, 2}, f_on_t{51, 6}, f_on_s{81, 5};
  std::ostringstream detail;
  detail << runs << " wrapper runs reproduce h; offline t " << off_time.r.str() << " <= " << f_off_t.str() << " s "
         << off_space.r.str() << " <= " << f_off_s.str() << ", online t " << on_time.r.str() << " <= "
         << f_on_t.str() << " s " << on_space.r.str() << " <= " << f_on_s.str();
  bool ok = off_time.r <= f_off_t && off_space.r <= f_off_s && on_time.r <= f_on_t && on_space.r <= f_on_s;
  return {ok, detail.str()};
}

}  // namespace acc
