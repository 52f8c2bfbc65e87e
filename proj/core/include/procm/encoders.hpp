#pragma once

// Compilers from machine descriptions to process programs, and the
// server and online/offline wrapper constructions.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "procm/machine_specs.hpp"
#include "procm/syntax.hpp"

namespace procm {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- building blocks --------------------------------------------------------

StrExprPtr lit(const Word& w);
StrExprPtr var(const std::string& name);

/// The expression w·e, built from prepends.
StrExprPtr prefixed(const Word& w, StrExprPtr e);

/// tl applied k times.
StrExprPtr tails(StrExprPtr e, std::size_t k);

/// Fixed-width binary code of `index` among `count` values (width >= 1).
Word fixed_code(std::size_t index, std::size_t count);

/// Fixed-width palindromic code of `index` among `count` values.
Word palindrome_code(std::size_t index, std::size_t count);

/// Nested nil/is0 tests on `key` selecting table[key], or `fallback` when
/// the key is not in the table.
ProcessPtr dispatch(const StrExprPtr& key, const std::map<Word, ProcessPtr>& table, const ProcessPtr& fallback);

/// Definition `name(params...) := dispatch(params[0], table, fallback)`.
ProcDef finite_dispatch(const std::string& name, const std::vector<std::string>& params,
                        const std::map<Word, ProcessPtr>& table, const ProcessPtr& fallback = Process::nil());

/// Internal choice among the branches through the queue at `key`: empty
/// family gives 0, a single branch is returned as is.
ProcessPtr internal_choice(const Word& key, const std::vector<ProcessPtr>& branches);

// ---- encoders ---------------------------------------------------------------

/// Reads the input tape on `i`, outputs the tape from the head on `o` when
/// a halting state is reached. Single processor throughout.
Program encode_tm(const TmSpec& m);

/// Reads the input on `i`, outputs "1" (accept) or "0" (reject) on `o`.
Program encode_atm(const AtmSpec& m);

/// Reads the initial accumulator on `i`; HALT outputs the accumulator on `o`.
Program encode_ram(const RamProgram& p);

/// Component k reads `i<k>` and outputs on `o<k>`; components share a clock.
Program encode_pram(const PramProgram& p);

/// Input wire k reads a word on `i<k>` (bit 0 iff it starts with 0);
/// output k sends "0" or "1" on `o<k>`.
Program encode_circuit(const CircuitSpec& c);

/// Visible action a is the output of its palindromic code on `o`.
Program encode_rtm(const RtmSpec& m);

/// Codes used by encode_rtm, in declaration order.
struct RtmCodes {
  std::map<std::string, Word> state;
  std::map<std::string, Word> action;
  std::map<std::string, Word> data;  // includes "_"
};

RtmCodes rtm_codes(const RtmSpec& m);

// ---- behavior wrappers ------------------------------------------------------

/// `main := i?x.P` with no internal queues becomes a server that spawns a
/// fresh copy of P for every request.
Program serverize(const Program& p);

/// Q implements an online behavior on i/o. The result reads a whole input,
/// feeds it to Q bit by bit (ε for 0, "1" for 1) and outputs the
/// concatenation of Q's answers.
Program offline_from_online(const Program& q);

/// P (`main := i?x.P'`, no internal queues) implements a monotonic h. The
/// result outputs h(ε) and then, after each input bit, the difference
/// between h of the prefix read so far and the output cumulated so far.
Program online_from_offline(const Program& p);

}  // namespace procm
