#include "procm/word.hpp"

#include <algorithm>

namespace procm {

Word::Word(std::string bits) : bits_(std::move(bits)) {
  if (!valid_bits(bits_)) throw std::invalid_argument("word contains symbols other than 0/1: " + bits_);
}

bool Word::valid_bits(std::string_view bits) noexcept {
  return std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0' || c == '1'; });
}

Word Word::repeat(char bit, std::size_t n) { return Word(std::string(n, bit)); }

Word Word::prepended(char bit) const {
  std::string out;
  out.reserve(bits_.size() + 1);
  out.push_back(bit);
  out += bits_;
  return Word(std::move(out), Unchecked{});
}

Word Word::tail() const {
  if (bits_.empty()) throw std::logic_error("tail of the empty word");
  return Word(bits_.substr(1), Unchecked{});
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

}  // namespace procm
