#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "procm/machine.hpp"
#include "procm/syntax.hpp"

namespace acc {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& rel);

std::shared_ptr<const procm::Program> share(procm::Program p);

procm::Run execute(const std::shared_ptr<const procm::Program>& p, const std::map<std::string, std::vector<procm::Word>>& script,
                   procm::Scheduler sched = {}, std::size_t limit = 5'000'000);

/// Out events of a run as (run position, action).
std::vector<std::pair<std::size_t, procm::Action>> outputs(const procm::Run& r);

/// Exact non-negative fraction; comparisons by cross-multiplication.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// Criteria, grouped by source file.
Outcome tm_fidelity();
Outcome constant_slowdown();
Outcome atm_parallelism();
Outcome time_oracle();
Outcome space_exactness();
Outcome diamond_axioms();
Outcome functional_lemma();
Outcome determinacy();
Outcome server_theorem();
Outcome online_offline();
Outcome ram_pram_circuit();
Outcome rtm_encoding();
Outcome weight_exactness();

}  // namespace acc
