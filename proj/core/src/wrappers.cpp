#include <functional>

#include "encode_util.hpp"

namespace procm {

using namespace build;

namespace {

using ChannelMap = std::function<ChannelRef(const ChannelRef&)>;

ProcessPtr rewrite(const ProcessPtr& p, const ChannelMap& f) {
  switch (p->kind) {
    case Process::Kind::Nil:
    case Process::Kind::Call: return p;
    case Process::Kind::Send: return Process::send(f(p->channel), p->payload, rewrite(p->first, f));
    case Process::Kind::Recv: return Process::recv(f(p->channel), p->name, rewrite(p->first, f));
    case Process::Kind::Cond: return Process::if_else(p->cond, rewrite(p->first, f), rewrite(p->second, f));
    case Process::Kind::Par: return Process::par(rewrite(p->first, f), rewrite(p->second, f));
  }
  return p;
}

void rewrite_all(Program& p, const ChannelMap& f) {
  for (auto& [name, def] : p.defs) def.body = rewrite(def.body, f);
  p.main = rewrite(p.main, f);
}

bool uses_queues(const Program& p) {
  bool found = false;
  auto check = [&](const Process& n) {
    if ((n.kind == Process::Kind::Send || n.kind == Process::Kind::Recv) &&
        n.channel.kind == ChannelRef::Kind::Internal)
      found = true;
  };
  for (const auto& [name, def] : p.defs) for_each_node(*def.body, check);
  for_each_node(*p.main, check);
  return found;
}

// Names for the wrapper's own definitions that avoid the wrapped program's.
class Namer {
 public:
  explicit Namer(const Program& p) : taken_(p) {}
  std::string operator()(const std::string& base) {
    auto it = chosen_.find(base);
    if (it != chosen_.end()) return it->second;
    std::string name = base;
    for (int k = 1; taken_.find(name); ++k) name = base + "_" + std::to_string(k);
    return chosen_[base] = name;
  }

 private:
  const Program& taken_;
  std::map<std::string, std::string> chosen_;
};

// Checks `main := i?x.P0` over channels i/o without internal queues.
const Process& server_shape(const Program& p, const char* what) {
  if (p.inputs != std::set<std::string>{"i"} || p.outputs != std::set<std::string>{"o"})
    throw EncodeError(std::string(what) + " needs exactly the channels i and o");
  if (uses_queues(p)) throw EncodeError(std::string(what) + " needs a program without internal queues");
  const Process& m = *p.main;
  if (m.kind != Process::Kind::Recv || m.channel.kind != ChannelRef::Kind::ExternalIn)
    throw EncodeError(std::string(what) + " needs main of the form i?x.P");
  return m;
}

// Pushes the bits of `src` onto `dst` (reversing them) and continues with
// call(done, {dst, extra...}).
void define_reverse(Program& p, const std::string& name, const std::string& done, std::vector<std::string> extra) {
  std::vector<std::string> params{"a", "b"};
  params.insert(params.end(), extra.begin(), extra.end());
  auto with = [&](StrExprPtr a, StrExprPtr b) {
    std::vector<StrExprPtr> args{std::move(a), std::move(b)};
    for (const auto& e : extra) args.push_back(var(e));
    return args;
  };
  std::vector<StrExprPtr> finished{var("b")};
  for (const auto& e : extra) finished.push_back(var(e));
  define(p, name, params,
         ite(nil(var("a")), call(done, finished),
             ite(is0(var("a")), call(name, with(tl(var("a")), p0(var("b")))),
                 call(name, with(tl(var("a")), p1(var("b")))))));
}

}  // namespace

Program serverize(const Program& prog) {
  const Process& m = server_shape(prog, "serverize");
  Program p = prog;
  Namer fresh(prog);
  std::string body = fresh("Body"), server = fresh("S");
  define(p, body, {m.name}, m.first);
  define(p, server, {}, inp("i", "x", par(call(body, {var("x")}), call(server))));
  p.main = call(server);
  return finish(p);
}

Program offline_from_online(const Program& q) {
  if (q.inputs != std::set<std::string>{"i"} || q.outputs != std::set<std::string>{"o"})
    throw EncodeError("offline_from_online needs exactly the channels i and o");
  const Word qi("10"), qo("11");
  Program p = q;
  rewrite_all(p, [&](const ChannelRef& c) {
    switch (c.kind) {
      case ChannelRef::Kind::ExternalIn: return ChannelRef::internal(lit(qi));
      case ChannelRef::Kind::ExternalOut: return ChannelRef::internal(lit(qo));
      case ChannelRef::Kind::Internal: break;
    }
    return ChannelRef::internal(p0(c.key));
  });
  Namer fresh(q);
  std::string feed = fresh("Feed"), push = fresh("Push"), next = fresh("Next"), rev = fresh("Rev"),
              emit = fresh("Emit");
  // Feed(x, acc): take Q's next answer and append it to the reversed acc.
  define(p, feed, {"x", "acc"}, rcv(lit(qo), "y", call(push, {var("y"), var("acc"), var("x")})));
  define(p, push, {"y", "acc", "x"},
         ite(nil(var("y")), call(next, {var("x"), var("acc")}),
             ite(is0(var("y")), call(push, {tl(var("y")), p0(var("acc")), var("x")}),
                 call(push, {tl(var("y")), p1(var("acc")), var("x")}))));
  define(p, next, {"x", "acc"},
         ite(nil(var("x")), call(rev, {var("acc"), w("")}),
             ite(is0(var("x")), snd(lit(qi), w(""), call(feed, {tl(var("x")), var("acc")})),
                 snd(lit(qi), w("1"), call(feed, {tl(var("x")), var("acc")})))));
  define_reverse(p, rev, emit, {});
  define(p, emit, {"b"}, out("o", var("b")));
  p.main = par(p.main, inp("i", "x", call(feed, {var("x"), w("")})));
  return finish(p);
}

Program online_from_offline(const Program& prog) {
  const Process& m = server_shape(prog, "online_from_offline");
  const Word ret("0"), cum("1");
  Program p = prog;
  rewrite_all(p, [&](const ChannelRef& c) {
    return c.kind == ChannelRef::Kind::ExternalOut ? ChannelRef::internal(lit(ret)) : c;
  });
  Namer fresh(prog);
  std::string body = fresh("Body"), start = fresh("Call"), rev = fresh("Rebuild"), launch = fresh("Launch"),
              diff = fresh("Diff"), wait = fresh("Wait");
  const Process& renamed = *p.main;
  define(p, body, {m.name}, renamed.first);
  // Call(sr): sr is the input read so far, reversed.
  define(p, start, {"sr"}, call(rev, {var("sr"), w(""), var("sr")}));
  define_reverse(p, rev, launch, {"sr"});
  define(p, launch, {"s", "sr"},
         par(call(body, {var("s")}),
             rcv(lit(ret), "y", rcv(lit(cum), "prev", call(diff, {var("y"), var("prev"), var("y"), var("sr")})))));
  // Diff(rest, prev, y, sr): strips prev from the front of y.
  define(p, diff, {"rest", "prev", "y", "sr"},
         ite(nil(var("prev")), par(snd(lit(cum), var("y"), stop()), par(out("o", var("rest")), call(wait, {var("sr")}))),
             call(diff, {tl(var("rest")), tl(var("prev")), var("y"), var("sr")})));
  define(p, wait, {"sr"},
         inp("i", "b", ite(nil(var("b")), call(start, {p0(var("sr"))}), call(start, {p1(var("sr"))}))));
  p.main = par(snd(lit(cum), w(""), stop()), call(start, {w("")}));
  return finish(p);
}

}  // namespace procm
