#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace procm {

/// A finite binary string over {0,1}. The empty word is a valid value.
class Word {
 public:
  Word() = default;

  /// Throws std::invalid_argument if `bits` contains anything but '0'/'1'.
  explicit Word(std::string bits);

  static bool valid_bits(std::string_view bits) noexcept;

  /// n copies of `bit`.
  static Word repeat(char bit, std::size_t n);

  const std::string& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  char front() const { return bits_.front(); }

  Word prepended(char bit) const;
  /// Precondition: !empty().
  Word tail() const;
  Word concat(const Word& rhs) const { return Word(bits_ + rhs.bits_, Unchecked{}); }
  bool is_prefix_of(const Word& other) const noexcept;

  /// Quoted form used by every text format: "" for the empty word.
  std::string quoted() const { return '"' + bits_ + '"'; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.bits_ <=> b.bits_; }

 private:
  struct Unchecked {};
  Word(std::string bits, Unchecked) : bits_(std::move(bits)) {}

  std::string bits_;
};

inline Word operator""_w(const char* s, std::size_t n) { return Word(std::string(s, n)); }

}  // namespace procm

template <>
struct std::hash<procm::Word> {
  std::size_t operator()(const procm::Word& w) const noexcept {
    return std::hash<std::string>{}(w.bits());
  }
};
