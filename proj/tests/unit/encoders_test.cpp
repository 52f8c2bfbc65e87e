#include <gtest/gtest.h>

#include "oracles.hpp"
#include "procm/behavior.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/parser.hpp"
#include "procm/printer.hpp"

using namespace procm;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(PROCM_FIXTURES "/machines/") + name); }

std::vector<Action> outputs(const Program& p, Script s, std::size_t limit = 2'000'000) {
  ScriptedInput in(std::move(s));
  procm::Run r = run(std::make_shared<const Program>(p), in, {}, limit);
  EXPECT_EQ(r.status.kind, RunStatus::Kind::Completed) << r.status.describe();
  std::vector<Action> out;
  for (const auto& rec : r.steps)
    if (rec.op == Op::Out) out.push_back(rec.action);
  return out;
}

Word single_output(const Program& p, Script s) {
  auto out = outputs(p, std::move(s));
  EXPECT_EQ(out.size(), 1u);
  return out.empty() ? Word() : out[0].word;
}

}  // namespace

TEST(Codes, FixedAndPalindrome) {
  EXPECT_EQ(fixed_code(0, 1).size(), 1u);
  std::set<Word> seen;
  for (std::size_t k = 0; k < 5; ++k) {
    Word c = fixed_code(k, 5);
    EXPECT_EQ(c.size(), fixed_code(0, 5).size());
    seen.insert(c);
    Word pc = palindrome_code(k, 5);
    std::string rev(pc.bits().rbegin(), pc.bits().rend());
    EXPECT_EQ(rev, pc.bits());
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Codes, DispatchSelectsBranch) {
  std::map<Word, ProcessPtr> table;
  for (std::string k : {"00", "01", "1"})
    table[Word(k)] = Process::send(ChannelRef::external_out("o"), lit(Word(k)), Process::nil());
  Program p;
  p.inputs = {"i"};
  p.outputs = {"o"};
  p.main = Process::recv(ChannelRef::external_in("i"), "x",
                         dispatch(var("x"), table, Process::send(ChannelRef::external_out("o"), lit("111"_w),
                                                                 Process::nil())));
  validate_program(p);
  for (std::string k : {"00", "01", "1"}) EXPECT_EQ(single_output(p, {{"i", {Word(k)}}}), Word(k));
  EXPECT_EQ(single_output(p, {{"i", {"10"_w}}}), "111"_w);
  EXPECT_EQ(single_output(p, {{"i", {Word()}}}), "111"_w);
}

TEST(Codes, InternalChoiceSingleBranchIsIdentity) {
  auto b = Process::nil();
  EXPECT_EQ(internal_choice("0"_w, {b}), b);
  EXPECT_EQ(internal_choice("0"_w, {})->kind, Process::Kind::Nil);
}

TEST(EncodeTm, IncrementMatchesOracle) {
  TmSpec m = parse_tm(fixture("inc.tm"));
  Program p = encode_tm(m);
  for (std::string x : {"", "0", "1", "11", "0101", "111"})
    EXPECT_EQ(single_output(p, {{"i", {Word(x)}}}).bits(), *oracle::run_tm(m, x).output) << x;
}

TEST(EncodeTm, ParsesBack) {
  Program p = encode_tm(parse_tm(fixture("palindrome.tm")));
  EXPECT_TRUE(equal(p, parse_program(to_source(p))));
}

TEST(EncodeTm, RejectsBadSpecs) {
  EXPECT_THROW(parse_tm("states: a\ninitial: b\nhalting: a\n"), SpecError);
  EXPECT_THROW(parse_tm("states: a b\ninitial: a\nhalting: b\ntrans: a 0 -> b 2 R\n"), SpecError);
}

TEST(EncodeAtm, DepthOneTree) {
  AtmSpec m = parse_atm(fixture("andor1.atm"));
  Program p = encode_atm(m);
  for (std::string x : {"00", "01", "10", "11"}) {
    auto want = oracle::eval_atm(m, x);
    ASSERT_TRUE(want);
    EXPECT_EQ(single_output(p, {{"i", {Word(x)}}}), Word(*want ? "1" : "0")) << x;
  }
}

TEST(EncodeRam, UnaryAdd) {
  RamProgram m = parse_ram(fixture("add.ram"));
  Program p = encode_ram(m);
  for (std::size_t a = 0; a <= 3; ++a)
    EXPECT_EQ(single_output(p, {{"i", {Word::repeat('0', a)}}}), Word::repeat('0', *oracle::run_ram(m, a).acc));
}

TEST(EncodePram, EchoesBothInputs) {
  PramProgram m = parse_pram(fixture("echo2.pram"));
  Program p = encode_pram(m);
  auto out = outputs(p, {{"i1", {"00"_w}}, {"i2", {"0"_w}}});
  std::map<std::string, Word> got;
  for (const auto& a : out) got[a.channel] = a.word;
  auto want = oracle::run_pram(m, {2, 1});
  EXPECT_EQ(got.at("o1"), Word::repeat('0', *want[0]));
  EXPECT_EQ(got.at("o2"), Word::repeat('0', *want[1]));
}

TEST(EncodeCircuit, AdderSample) {
  CircuitSpec c = parse_circuit(fixture("adder2.circuit"));
  Program p = encode_circuit(c);
  std::vector<bool> in{true, true, true, false};  // 3 + 1
  Script s;
  for (std::size_t k = 0; k < 4; ++k) s["i" + std::to_string(k + 1)] = {Word(in[k] ? "1" : "0")};
  auto out = outputs(p, s);
  auto want = oracle::eval_circuit(c, in);
  std::map<std::string, Word> got;
  for (const auto& a : out) got[a.channel] = a.word;
  for (std::size_t j = 0; j < want.size(); ++j)
    EXPECT_EQ(got.at("o" + std::to_string(j + 1)), Word(want[j] ? "1" : "0"));
}

TEST(EncodeRtm, CodesAndShallowBisimilarity) {
  RtmSpec m = parse_rtm(fixture("counter.rtm"));
  RtmCodes codes = rtm_codes(m);
  EXPECT_EQ(codes.data.count("_"), 1u);
  EXPECT_EQ(codes.action.size(), 3u);
  ExploreOptions opts;
  opts.visible_depth = 2;
  opts.state_limit = 20000;
  auto v = weak_bisim(explore_lts(encode_rtm(m), {}, opts), oracle::rtm_lts(m, 2), false);
  EXPECT_TRUE(v.equivalent()) << v.reason;
}

TEST(Wrappers, ShapeErrors) {
  EXPECT_THROW(serverize(parse_program("output o; main := o!\"\".0")), EncodeError);
  EXPECT_THROW(serverize(parse_program("input i; output o; main := i?x.([x]!x.0 | o!x.0)")), EncodeError);
  EXPECT_THROW(online_from_offline(parse_program("main := 0")), EncodeError);
}

TEST(Wrappers, ServerAnswersEachRequest) {
  TmSpec inc = parse_tm(fixture("inc.tm"));
  Program s = serverize(encode_tm(inc));
  auto out = outputs(s, {{"i", {"1"_w, "0"_w, "11"_w}}});
  std::multiset<std::string> got, want;
  for (const auto& a : out) got.insert(a.word.bits());
  for (std::string x : {"1", "0", "11"}) want.insert(*oracle::run_tm(inc, x).output);
  EXPECT_EQ(got, want);
}
