#include "sl3/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <random>
#include "json.hpp"

namespace sl3 {

namespace {

int unit_code(const Letter& l) { return 2 * l.index + (l.exp < 0 ? 1 : 0); }

void check_letter(const Letter& l) {
  if (l.index < 1) throw std::invalid_argument("letter index must be >= 1");
}

}  // namespace

Word::Word(const std::vector<Letter>& letters) {
  for (const Letter& l : letters) {
    check_letter(l);
    if (l.exp != 0) push(l);
  }
}

Word Word::generator(int index, int exp) {
  Word w;
  check_letter({index, exp});
  if (exp != 0) w.letters_.push_back({index, exp});
  return w;
}

void Word::push(Letter l) {
  if (!letters_.empty() && letters_.back().index == l.index) {
    letters_.back().exp += l.exp;
    if (letters_.back().exp == 0) letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  for (const Letter& l : b.letters_) out.push(l);
  return out;
}

Word Word::inverse() const {
  Word out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back({it->index, -it->exp});
  return out;
}

Word Word::power(int n) const {
  Word base = n < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

Word Word::rotated(std::size_t k) const {
  if (letters_.empty()) return *this;
  k %= letters_.size();
  std::vector<Letter> v(letters_.begin() + k, letters_.end());
  v.insert(v.end(), letters_.begin(), letters_.begin() + k);
  return Word(v);
}

bool Word::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front().index != letters_.back().index;
}

Word Word::cyclically_reduced() const {
  std::vector<Letter> v = letters_;
  while (v.size() >= 2 && v.front().index == v.back().index) {
    v.front().exp += v.back().exp;
    v.pop_back();
    if (v.front().exp == 0) v.erase(v.begin());
  }
  Word out;
  out.letters_ = std::move(v);
  return out;
}

int Word::max_index() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.index);
  return m;
}

std::string Word::str() const {
  std::string s;
  for (const Letter& l : letters_) {
    if (!s.empty()) s += ' ';
    s += 'x' + std::to_string(l.index);
    if (l.exp != 1) s += '^' + std::to_string(l.exp);
  }
  return s;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  std::size_t i = 0, j = 0;
  int ri = 0, rj = 0;
  while (true) {
    if (ri == 0 && i < letters_.size()) ri = std::abs(letters_[i].exp);
    if (rj == 0 && j < other.letters_.size()) rj = std::abs(other.letters_[j].exp);
    bool end_a = ri == 0, end_b = rj == 0;
    if (end_a || end_b) return !end_a <=> !end_b;
    int ca = unit_code(letters_[i]), cb = unit_code(other.letters_[j]);
    if (ca != cb) return ca <=> cb;
    int step = std::min(ri, rj);
    ri -= step;
    rj -= step;
    if (ri == 0) ++i;
    if (rj == 0) ++j;
  }
}

namespace {

Word parse_json_word(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed word: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_array()) throw ParseError("malformed word: expected array", 0);
  std::vector<Letter> letters;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw ParseError("malformed word: expected [index, exponent] pairs", 0);
    int idx = item[0].get<int>(), e = item[1].get<int>();
    if (idx < 1) throw ParseError("malformed word: index must be >= 1", 0);
    if (e == 0) throw ParseError("malformed word: exponent must be nonzero", 0);
    letters.push_back({idx, e});
  }
  return Word(letters);
}

}  // namespace

Word parse_word(std::string_view text) {
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  skip();
  if (p < text.size() && text[p] == '[') return parse_json_word(text);

  auto read_int = [&](bool allow_sign) {
    std::size_t start = p;
    bool neg = false;
    if (allow_sign && p < text.size() && (text[p] == '-' || text[p] == '+')) {
      neg = text[p] == '-';
      ++p;
    }
    std::size_t digits = p;
    long value = 0;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
      value = value * 10 + (text[p] - '0');
      if (value > 1000000) throw ParseError("malformed word: number too large", start);
      ++p;
    }
    if (p == digits) throw ParseError("malformed word: expected integer", p);
    return static_cast<int>(neg ? -value : value);
  };

  std::vector<Letter> letters;
  while (true) {
    skip();
    if (p >= text.size()) break;
    if (text[p] != 'x') throw ParseError("malformed word: expected 'x'", p);
    ++p;
    std::size_t idx_pos = p;
    int idx = read_int(false);
    if (idx < 1) throw ParseError("malformed word: index must be >= 1", idx_pos);
    int e = 1;
    if (p < text.size() && text[p] == '^') {
      ++p;
      std::size_t e_pos = p;
      e = read_int(true);
      if (e == 0) throw ParseError("malformed word: exponent must be nonzero", e_pos);
    }
    if (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p])))
      throw ParseError("malformed word: unexpected character", p);
    letters.push_back({idx, e});
  }
  return Word(letters);
}

Word parse_t_notation(std::string_view text) {
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  skip();
  if (text.substr(p, 2) != "t(") throw ParseError("expected 't('", p);
  p += 2;
  std::vector<Letter> letters;
  skip();
  if (p < text.size() && text[p] == ')') {
    ++p;
  } else {
    while (true) {
      skip();
      std::size_t start = p;
      bool neg = false;
      if (p < text.size() && (text[p] == '-' || text[p] == '+')) {
        neg = text[p] == '-';
        ++p;
      }
      int v = 0;
      std::size_t digits = p;
      while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
        v = v * 10 + (text[p++] - '0');
      if (p == digits || v < 1) throw ParseError("expected letter index", start);
      letters.push_back({v, neg ? -1 : 1});
      skip();
      if (p < text.size() && text[p] == ',') {
        ++p;
        continue;
      }
      if (p < text.size() && text[p] == ')') {
        ++p;
        break;
      }
      throw ParseError("expected ',' or ')'", p);
    }
  }
  skip();
  if (p != text.size()) throw ParseError("trailing characters", p);
  return Word(letters);
}

namespace {

// Compares the rotations of a cyclically reduced letter sequence starting at a and b.
std::strong_ordering compare_rotations(const std::vector<Letter>& v, std::size_t a, std::size_t b) {
  const std::size_t n = v.size();
  std::size_t i = 0, j = 0;
  int ri = std::abs(v[a].exp), rj = std::abs(v[b].exp);
  while (true) {
    const Letter& la = v[(a + i) % n];
    const Letter& lb = v[(b + j) % n];
    int ca = unit_code(la), cb = unit_code(lb);
    if (ca != cb) return ca <=> cb;
    int step = std::min(ri, rj);
    ri -= step;
    rj -= step;
    if (ri == 0 && ++i < n) ri = std::abs(v[(a + i) % n].exp);
    if (rj == 0 && ++j < n) rj = std::abs(v[(b + j) % n].exp);
    if (i == n || j == n) return (j == n) <=> (i == n);
  }
}

}  // namespace

CyclicKey canonical_cyclic_key(const Word& w) {
  Word c = w.cyclically_reduced();
  CyclicKey key;
  if (c.empty()) return key;
  const std::vector<Letter>& v = c.letters();
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (compare_rotations(v, k, best) < 0) best = k;
  key.word_ = best == 0 ? c : c.rotated(best);
  key.weight_ = weighted_length(key.word_);
  key.units_ = unit_count(key.word_);
  return key;
}

std::string CyclicKey::str() const {
  std::string s = "t(";
  bool first = true;
  for (const Letter& l : word_.letters()) {
    int n = std::abs(l.exp);
    for (int i = 0; i < n; ++i) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(l.exp < 0 ? -l.index : l.index);
    }
  }
  return s + ")";
}

int weighted_length(const Word& w) {
  int n = 0;
  for (const Letter& l : w.letters()) n += l.exp > 0 ? l.exp : -2 * l.exp;
  return n;
}

int unit_count(const Word& w) {
  int n = 0;
  for (const Letter& l : w.letters()) n += std::abs(l.exp);
  return n;
}

std::vector<int> multidegree(const Word& w, int r) {
  std::vector<int> d(r, 0);
  for (const Letter& l : w.letters()) {
    if (l.index > r) throw std::out_of_range("letter index exceeds r");
    d[l.index - 1] += l.exp > 0 ? l.exp : -2 * l.exp;
  }
  return d;
}

Word random_word(std::uint64_t seed, int r, int max_length, int max_exp) {
  if (r < 1 || max_length < 1 || max_exp < 1) throw std::invalid_argument("random_word bounds");
  std::mt19937_64 rng(seed);
  int left = 1 + static_cast<int>(rng() % max_length);
  std::vector<Letter> ls;
  int prev = 0;
  while (left > 0) {
    int i = 1 + static_cast<int>(rng() % r);
    if (r > 1)
      while (i == prev) i = 1 + static_cast<int>(rng() % r);
    int m = std::min(left, 1 + static_cast<int>(rng() % max_exp));
    ls.push_back({i, (rng() & 1) ? m : -m});
    left -= m;
    prev = i;
    if (r == 1) break;
  }
  return Word(ls);
}

}  // namespace sl3
