#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sl3 {

// A generator power x_index^exp with index >= 1 and exp != 0.
struct Letter {
  int index = 1;
  int exp = 1;

  auto operator<=>(const Letter&) const = default;
};

// Freely reduced word in the free group on x_1, x_2, ...
class Word {
 public:
  Word() = default;
  explicit Word(const std::vector<Letter>& letters);

  static Word generator(int index, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(int n) const;
  Word rotated(std::size_t k) const;
  Word cyclically_reduced() const;
  bool is_cyclically_reduced() const;
  int max_index() const;

  // Space separated text such as "x1 x2^-1"; the empty word prints as "".
  std::string str() const;

  friend Word operator*(const Word& a, const Word& b);
  bool operator==(const Word&) const = default;
  // Lexicographic order on the unit-step expansion.
  std::strong_ordering operator<=>(const Word& other) const;

 private:
  void push(Letter l);

  std::vector<Letter> letters_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Accepts "x1 x2^-1 x3^2" or the JSON form [[1,1],[2,-1],[3,2]].
Word parse_word(std::string_view text);

// Representative of a conjugacy class: the minimal rotation of the cyclic
// reduction. Two words have equal trace functions on SL(3) whenever their
// keys agree.
class CyclicKey {
 public:
  CyclicKey() = default;

  const Word& word() const { return word_; }
  bool empty() const { return word_.empty(); }
  int weight() const { return weight_; }
  int units() const { return units_; }

  // "t(1,2,-3)"; exponents are expanded so x1^2 becomes "1,1".
  std::string str() const;

  bool operator==(const CyclicKey& o) const { return word_ == o.word_; }
  std::strong_ordering operator<=>(const CyclicKey& o) const {
    return word_ <=> o.word_;
  }

 private:
  friend CyclicKey canonical_cyclic_key(const Word& w);
  Word word_;
  int weight_ = 0;
  int units_ = 0;
};

CyclicKey canonical_cyclic_key(const Word& w);

// Each letter x^e contributes e when e > 0 and 2|e| when e < 0.
int weighted_length(const Word& w);
int unit_count(const Word& w);
std::vector<int> multidegree(const Word& w, int r);

// Parses the t-notation used by CyclicKey::str().
Word parse_t_notation(std::string_view text);

// Reduced word in x_1..x_r whose free-group length (sum of |exp|) is drawn
// from 1..max_length, with syllable exponents in [-max_exp, max_exp].
Word random_word(std::uint64_t seed, int r, int max_length, int max_exp);

}  // namespace sl3
