#include <gtest/gtest.h>

#include "json.hpp"
#include "procm/complexity.hpp"
#include "procm/parser.hpp"

using namespace procm;

namespace {

std::shared_ptr<const Program> prog(const std::string& src) {
  return std::make_shared<const Program>(parse_program(src));
}

const char* kIdentity = "input i; output o; main := i?x.o!x.0";

CostReport report(const std::string& src, Script s, SpaceMode mode = SpaceMode::Observed) {
  ScriptedInput in(std::move(s));
  return cost_report(run(prog(src), in), mode);
}

}  // namespace

TEST(Bound, Evaluation) {
  EXPECT_EQ(parse_bound("3").eval(10), 3);
  EXPECT_EQ(parse_bound("n").eval(7), 7);
  EXPECT_EQ(parse_bound("2*n + 1").eval(5), 11);
  EXPECT_EQ(parse_bound("n^2").eval(6), 36);
  EXPECT_EQ(parse_bound("2^n").eval(10), 1024);
  EXPECT_EQ(parse_bound("max(n, 4)").eval(2), 4);
  EXPECT_EQ(parse_bound("max(n, 4)").eval(9), 9);
  EXPECT_EQ(parse_bound("(n+1)*(n+1)").eval(3), 16);
  EXPECT_EQ(parse_bound("2^n").eval(100), BigNat(1) << 100);
  EXPECT_EQ(parse_bound(" 7*n ").text(), " 7*n ");
}

TEST(Bound, Errors) {
  EXPECT_THROW(parse_bound(""), BoundError);
  EXPECT_THROW(parse_bound("n^n"), BoundError);
  EXPECT_THROW(parse_bound("2*"), BoundError);
  EXPECT_THROW(parse_bound("m"), BoundError);
  EXPECT_THROW(parse_bound("max(n)"), BoundError);
}

TEST(Report, IdentityForwarder) {
  CostReport rep = report(kIdentity, {{"i", {"011"_w}}});
  ASSERT_EQ(rep.outputs.size(), 1u);
  const auto& o = rep.outputs[0];
  EXPECT_EQ(o.ordinal, 1u);
  EXPECT_EQ(o.event, 2u);
  EXPECT_EQ(o.word, "011"_w);
  EXPECT_EQ(o.input_size, 4u);
  // Inp weight 1+3, Out weight 1+cost(x)=2
  EXPECT_EQ(o.time, 6u);
  EXPECT_EQ(o.space, 4u);
  EXPECT_EQ(rep.steps, 3u);
  EXPECT_EQ(rep.total_weight, 7u);
}

TEST(Report, ExactFallsBackBeyondLimit) {
  std::string src = "output o; main := ((0 | 0) | ((0 | 0) | (o!\"\".0 | (0 | 0))))";
  ScriptedInput in;
  procm::Run r = run(prog(src), in);
  CostReport exact = cost_report(r, SpaceMode::Exact, 2);
  ASSERT_EQ(exact.outputs.size(), 1u);
  EXPECT_TRUE(exact.outputs[0].fallback);
  EXPECT_EQ(exact.outputs[0].mode, SpaceMode::Observed);
}

TEST(WorksIn, PassAndFail) {
  CostReport rep = report(kIdentity, {{"i", {"011"_w}}});
  EXPECT_TRUE(works_in(rep, parse_bound("2*n"), parse_bound("n")).pass());
  Verdict v = works_in(rep, parse_bound("5"), parse_bound("n"));
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].quantity, "time");
  EXPECT_EQ(v.violations[0].actual, 6u);
  EXPECT_EQ(v.violations[0].bound, 5);
}

TEST(WorksIn, IncompleteRunIsViolation) {
  EvidenceOptions opts;
  opts.step_limit = 20;
  Evidence ev = class_evidence(prog("L() := L<>; main := L<>"), {Script{}}, parse_bound("n"), parse_bound("n"), opts);
  ASSERT_FALSE(ev.verdict.pass());
  EXPECT_EQ(ev.verdict.violations[0].quantity, "run");
  // a single report is checked on its outputs only
  ScriptedInput in;
  procm::Run r = run(prog("L() := L<>; main := L<>"), in, {}, 20);
  EXPECT_TRUE(works_in(cost_report(r), parse_bound("n"), parse_bound("n")).pass());
}

TEST(Evidence, SuiteAggregates) {
  std::vector<Script> suite;
  for (std::string w : {"", "0", "0110"}) suite.push_back({{"i", {Word(w)}}});
  for (bool parallel : {false, true}) {
    EvidenceOptions opts;
    opts.parallel = parallel;
    Evidence ev = class_evidence(prog(kIdentity), suite, parse_bound("2*n+1"), parse_bound("n"), opts);
    EXPECT_EQ(ev.reports.size(), 3u);
    EXPECT_TRUE(ev.verdict.pass());
    Evidence bad = class_evidence(prog(kIdentity), suite, parse_bound("n"), parse_bound("n"), opts);
    EXPECT_EQ(bad.verdict.violations.size(), 3u);
    EXPECT_EQ(bad.verdict.violations[2].script, 3u);
  }
}

TEST(Formatting, TextAndJson) {
  CostReport rep = report(kIdentity, {{"i", {"01"_w}}});
  std::string text = format_report(rep);
  EXPECT_NE(text.find("output 1 ch=o word=\"01\" time=5"), std::string::npos);
  EXPECT_NE(text.find("insize=3 inputs=[i:\"01\"]"), std::string::npos);
  Verdict v = works_in(rep, parse_bound("1"), parse_bound("n"));
  EXPECT_NE(format_verdict(v).find("verdict fail"), std::string::npos);
  EXPECT_NE(format_verdict(Verdict{}).find("evidence on tested inputs only"), std::string::npos);

  auto doc = nlohmann::json::parse(report_json({rep}, &v));
  EXPECT_EQ(doc["reports"][0]["outputs"][0]["time"], 5);
  EXPECT_EQ(doc["reports"][0]["outputs"][0]["word"], "01");
  EXPECT_EQ(doc["verdict"]["pass"], false);
  EXPECT_EQ(doc["verdict"]["violations"][0]["bound"], "1");
}
