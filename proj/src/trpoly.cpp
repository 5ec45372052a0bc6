#include "sl3/trpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <array>
#include <atomic>
#include <mutex>
#include <shared_mutex>

namespace sl3 {

namespace {

// Size-class free lists for GMP limb buffers up to 64 bytes. Coefficients
// are small, so this removes most allocator traffic in polynomial sums.
constexpr std::size_t kPoolClasses = 8;
constexpr std::size_t kPoolMax = 8 * kPoolClasses;
thread_local void* pool_lists[kPoolClasses] = {};

std::size_t pool_class(std::size_t n) { return (n + 7) / 8 - 1; }

void* pool_alloc(std::size_t n) {
  if (n == 0 || n > kPoolMax) return std::malloc(n);
  std::size_t c = pool_class(n);
  if (void* p = pool_lists[c]) {
    pool_lists[c] = *static_cast<void**>(p);
    return p;
  }
  return std::malloc((c + 1) * 8);
}

void pool_free(void* p, std::size_t n) {
  if (n == 0 || n > kPoolMax) return std::free(p);
  std::size_t c = pool_class(n);
  *static_cast<void**>(p) = pool_lists[c];
  pool_lists[c] = p;
}

void* pool_realloc(void* p, std::size_t old_n, std::size_t new_n) {
  if (old_n > kPoolMax && new_n > kPoolMax) return std::realloc(p, new_n);
  if (old_n && new_n && old_n <= kPoolMax && new_n <= kPoolMax &&
      pool_class(old_n) == pool_class(new_n))
    return p;
  void* q = pool_alloc(new_n);
  std::memcpy(q, p, std::min(old_n, new_n));
  pool_free(p, old_n);
  return q;
}

const bool pool_installed = [] {
  mp_set_memory_functions(pool_alloc, pool_realloc, pool_free);
  return true;
}();

// Keys live in fixed chunks that never move, so reads need no lock.
constexpr std::size_t kChunkBits = 12;
constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

struct SymbolTable {
  std::shared_mutex mu;
  std::array<std::atomic<CyclicKey*>, kMaxChunks> chunks{};
  std::atomic<std::size_t> size{0};
  std::map<Word, Sym> index;
  ~SymbolTable() {
    for (auto& c : chunks) delete[] c.load();
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Sym intern(const CyclicKey& key) {
  if (key.empty()) throw std::invalid_argument("the empty word has no trace symbol");
  SymbolTable& t = table();
  {
    std::shared_lock lock(t.mu);
    auto it = t.index.find(key.word());
    if (it != t.index.end()) return it->second;
  }
  std::unique_lock lock(t.mu);
  auto it = t.index.find(key.word());
  if (it != t.index.end()) return it->second;
  std::size_t n = t.size.load(std::memory_order_relaxed);
  if ((n >> kChunkBits) >= kMaxChunks) throw std::length_error("symbol table full");
  CyclicKey* chunk = t.chunks[n >> kChunkBits].load(std::memory_order_relaxed);
  if (!chunk) {
    chunk = new CyclicKey[kChunkSize];
    t.chunks[n >> kChunkBits].store(chunk, std::memory_order_release);
  }
  chunk[n & (kChunkSize - 1)] = key;
  Sym s = static_cast<Sym>(n);
  t.index.emplace(key.word(), s);
  t.size.store(n + 1, std::memory_order_release);
  return s;
}

const CyclicKey& key_of(Sym s) {
  SymbolTable& t = table();
  if (s >= t.size.load(std::memory_order_acquire)) throw std::out_of_range("unknown symbol");
  return t.chunks[s >> kChunkBits].load(std::memory_order_acquire)[s & (kChunkSize - 1)];
}

std::size_t symbol_count() { return table().size.load(std::memory_order_acquire); }

bool display_less(Sym a, Sym b) {
  if (a == b) return false;
  const CyclicKey& ka = key_of(a);
  const CyclicKey& kb = key_of(b);
  if (ka.weight() != kb.weight()) return ka.weight() < kb.weight();
  return ka < kb;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

int monomial_weight(const Monomial& m) {
  int w = 0;
  for (Sym s : m) w += key_of(s).weight();
  return w;
}

TracePolynomial::TracePolynomial(const Rational& c) {
  if (c != 0) terms_.push_back({{}, c});
}

TracePolynomial TracePolynomial::trace(const Word& w) {
  CyclicKey k = canonical_cyclic_key(w);
  if (k.empty()) return TracePolynomial(3);
  return symbol(intern(k));
}

TracePolynomial TracePolynomial::symbol(Sym s) {
  TracePolynomial p;
  p.terms_.push_back({{s}, Rational(1)});
  return p;
}

TracePolynomial TracePolynomial::from_terms(std::vector<Term> terms) {
  PolynomialBuilder b;
  for (auto& [m, c] : terms) {
    std::sort(m.begin(), m.end());
    b.add(m, c);
  }
  return b.finish();
}

Rational TracePolynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return t.first < x; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

int TracePolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_weight(m));
  return d;
}

int TracePolynomial::max_symbol_weight() const {
  int w = 0;
  for (const auto& [m, c] : terms_)
    for (Sym s : m) w = std::max(w, key_of(s).weight());
  return w;
}

std::vector<Sym> TracePolynomial::symbols() const {
  std::vector<Sym> out;
  for (const auto& [m, c] : terms_) out.insert(out.end(), m.begin(), m.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<TracePolynomial::Term> merge_sorted(const std::vector<TracePolynomial::Term>& a,
                                                const std::vector<TracePolynomial::Term>& b,
                                                const Rational& sign) {
  std::vector<TracePolynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, sign * b[j].second});
      ++j;
    } else {
      Rational c = a[i].second + sign * b[j].second;
      if (c != 0) out.push_back({a[i].first, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

TracePolynomial& TracePolynomial::operator+=(const TracePolynomial& o) {
  terms_ = merge_sorted(terms_, o.terms_, Rational(1));
  return *this;
}

TracePolynomial& TracePolynomial::operator-=(const TracePolynomial& o) {
  terms_ = merge_sorted(terms_, o.terms_, Rational(-1));
  return *this;
}

TracePolynomial& TracePolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b) {
  PolynomialBuilder builder;
  builder.add_product(a, b);
  return builder.finish();
}

void PolynomialBuilder::add(Monomial m, Rational c) {
  if (c == 0) return;
  pending_.emplace_back(std::move(m), std::move(c));
  if (pending_.size() > 2 * compacted_ + 4096) compact();
}

void PolynomialBuilder::add(const TracePolynomial& p, const Rational& scale) {
  if (scale == 1) {
    for (const auto& [m, c] : p.terms()) add(m, c);
  } else {
    for (const auto& [m, c] : p.terms()) add(m, scale * c);
  }
}

void PolynomialBuilder::add(TracePolynomial&& p, const Rational& scale) {
  for (auto& [m, c] : p.terms_) {
    if (scale != 1) c *= scale;
    add(std::move(m), std::move(c));
  }
  p.terms_.clear();
}

void PolynomialBuilder::add_product(const TracePolynomial& a, const TracePolynomial& b,
                                    const Rational& scale) {
  pending_.reserve(pending_.size() + a.size() * b.size());
  for (const auto& [ma, ca] : a.terms()) {
    Rational sa = scale * ca;
    bool integral = sa.get_den() == 1;
    for (const auto& [mb, cb] : b.terms()) {
      Rational c;
      if (integral && cb.get_den() == 1)
        mpz_mul(c.get_num_mpz_t(), sa.get_num_mpz_t(), cb.get_num_mpz_t());
      else
        mpq_mul(c.get_mpq_t(), sa.get_mpq_t(), cb.get_mpq_t());
      add(monomial_product(ma, mb), std::move(c));
    }
  }
}

void PolynomialBuilder::compact() {
  std::sort(pending_.begin(), pending_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<TracePolynomial::Term> out;
  out.reserve(pending_.size());
  for (auto& t : pending_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  pending_ = std::move(out);
  compacted_ = pending_.size();
}

TracePolynomial PolynomialBuilder::finish() {
  compact();
  TracePolynomial p;
  p.terms_ = std::move(pending_);
  pending_.clear();
  compacted_ = 0;
  return p;
}

namespace {

void put_varint(std::string& out, unsigned long v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

unsigned long get_varint(const std::string& in, std::size_t& pos) {
  unsigned long v = 0;
  for (int shift = 0;; shift += 7) {
    auto b = static_cast<unsigned char>(in[pos++]);
    v |= static_cast<unsigned long>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
  }
}

}  // namespace

PackedPolynomial::PackedPolynomial(const TracePolynomial& p) {
  put_varint(data_, p.terms_.size());
  for (const auto& [m, c] : p.terms_) {
    put_varint(data_, m.size());
    Sym prev = 0;
    for (Sym s : m) {
      put_varint(data_, s - prev);
      prev = s;
    }
    const mpz_class &num = c.get_num(), &den = c.get_den();
    if (num.fits_slong_p() && den.fits_ulong_p()) {
      long n = num.get_si();
      data_.push_back(0);
      put_varint(data_, n < 0 ? (static_cast<unsigned long>(-(n + 1)) << 1) | 1
                              : static_cast<unsigned long>(n) << 1);
      put_varint(data_, den.get_ui());
    } else {
      std::string text = c.get_str(62);
      data_.push_back(1);
      put_varint(data_, text.size());
      data_ += text;
    }
  }
  data_.shrink_to_fit();
}

TracePolynomial PackedPolynomial::unpack() const {
  TracePolynomial p;
  if (data_.empty()) return p;
  std::size_t pos = 0;
  p.terms_.resize(get_varint(data_, pos));
  for (auto& [m, c] : p.terms_) {
    m.resize(get_varint(data_, pos));
    Sym prev = 0;
    for (Sym& s : m) s = prev += static_cast<Sym>(get_varint(data_, pos));
    if (data_[pos++] == 0) {
      unsigned long z = get_varint(data_, pos);
      long n = (z & 1) ? -static_cast<long>(z >> 1) - 1 : static_cast<long>(z >> 1);
      unsigned long d = get_varint(data_, pos);
      c = Rational(n, d);
    } else {
      std::size_t len = get_varint(data_, pos);
      c.set_str(data_.substr(pos, len), 62);
      pos += len;
    }
  }
  return p;
}

TracePolynomial TracePolynomial::map_symbols(
    const std::function<TracePolynomial(Sym)>& image) const {
  std::unordered_map<Sym, TracePolynomial> cache;
  auto img = [&](Sym s) -> const TracePolynomial& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, image(s)).first;
    return it->second;
  };
  // Terms are sorted, so those sharing a prefix are contiguous; factor each prefix out once.
  std::function<TracePolynomial(std::size_t, std::size_t, std::size_t)> group =
      [&](std::size_t lo, std::size_t hi, std::size_t depth) {
        TracePolynomial constant;
        std::vector<TracePolynomial> products;
        std::vector<std::pair<const TracePolynomial*, Rational>> parts;
        std::vector<std::pair<std::size_t, Rational>> linear;
        if (lo < hi && terms_[lo].first.size() == depth) constant = TracePolynomial(terms_[lo++].second);
        products.reserve(hi - lo);
        while (lo < hi) {
          Sym s = terms_[lo].first[depth];
          std::size_t end = lo + 1;
          while (end < hi && terms_[end].first[depth] == s) ++end;
          TracePolynomial tail = group(lo, end, depth + 1);
          const TracePolynomial& head = img(s);
          if (tail.size() == 1 && tail.terms_[0].first.empty())
            parts.emplace_back(&head, tail.terms_[0].second);
          else
            products.push_back(head * tail);
          lo = end;
        }
        if (!constant.is_zero()) parts.emplace_back(&constant, 1);
        for (const auto& p : products) parts.emplace_back(&p, 1);
        return linear_combination(parts);
      };
  return group(0, terms_.size(), 0);
}

namespace {

// acc += a * b
void add_product_to(Rational& acc, const Rational& a, const Rational& b) {
  if (acc.get_den() == 1 && a.get_den() == 1 && b.get_den() == 1) {
    mpz_addmul(acc.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  } else {
    Rational t;
    mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    acc += t;
  }
}

}  // namespace

TracePolynomial TracePolynomial::linear_combination(
    const std::vector<std::pair<const TracePolynomial*, Rational>>& parts) {
  TracePolynomial out;
  std::vector<std::pair<const TracePolynomial*, const Rational*>> live;
  for (const auto& [p, c] : parts)
    if (c != 0 && !p->is_zero()) live.emplace_back(p, &c);
  if (live.empty()) return out;
  if (live.size() == 1) {
    out = *live[0].first;
    if (*live[0].second != 1) out *= *live[0].second;
    return out;
  }
  std::vector<std::size_t> pos(live.size(), 0);
  auto current = [&](std::size_t i) -> const Term& { return live[i].first->terms_[pos[i]]; };
  auto later = [&](std::size_t i, std::size_t j) { return current(j).first < current(i).first; };
  std::vector<std::size_t> heap(live.size());
  std::size_t largest = 0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    heap[i] = i;
    largest = std::max(largest, live[i].first->size());
  }
  std::make_heap(heap.begin(), heap.end(), later);
  out.terms_.reserve(largest);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    std::size_t i = heap.back();
    const Term& t = current(i);
    if (out.terms_.empty() || out.terms_.back().first != t.first) {
      if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
      out.terms_.emplace_back(t.first, Rational(0));
    }
    add_product_to(out.terms_.back().second, t.second, *live[i].second);
    if (++pos[i] < live[i].first->size())
      std::push_heap(heap.begin(), heap.end(), later);
    else
      heap.pop_back();
  }
  if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
  out.terms_.shrink_to_fit();
  return out;
}

TracePolynomial TracePolynomial::substitute(const std::map<int, Word>& words) const {
  return map_symbols([&](Sym s) {
    Word image;
    for (const Letter& l : key_of(s).word().letters()) {
      auto it = words.find(l.index);
      image = image * (it == words.end() ? Word::generator(l.index, l.exp) : it->second.power(l.exp));
    }
    return TracePolynomial::trace(image);
  });
}

namespace {

std::vector<Sym> display_factors(const Monomial& m) {
  std::vector<Sym> f(m.begin(), m.end());
  std::sort(f.begin(), f.end(), display_less);
  return f;
}

bool display_monomial_less(const std::vector<Sym>& a, const std::vector<Sym>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), display_less);
}

std::string monomial_text(const std::vector<Sym>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    if (!s.empty()) s += '*';
    s += key_of(f[i]).str();
    if (j - i > 1) s += '^' + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace

std::string TracePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::vector<Sym>, const Rational*>> order;
  for (const auto& [m, c] : terms_) order.push_back({display_factors(m), &c});
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return display_monomial_less(x.first, y.first);
  });
  std::string s;
  for (const auto& [f, cp] : order) {
    Rational c = *cp;
    bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (f.empty()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += monomial_text(f);
    }
  }
  return s;
}

TracePolynomial parse_trace_polynomial(std::string_view text) {
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  auto read_uint = [&]() {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (start == p) throw ParseError("expected number", p);
    return std::string(text.substr(start, p - start));
  };
  PolynomialBuilder out;
  skip();
  if (text.substr(p) == "0") return {};
  bool first = true;
  while (true) {
    skip();
    if (p >= text.size()) {
      if (first) throw ParseError("empty polynomial", p);
      break;
    }
    Rational sign = 1;
    if (text[p] == '+' || text[p] == '-') {
      if (text[p] == '-') sign = -1;
      ++p;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", p);
    }
    first = false;
    Rational coef = 1;
    bool have_coef = false;
    if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
      std::string num = read_uint();
      if (p < text.size() && text[p] == '/') {
        ++p;
        num += "/" + read_uint();
      }
      coef = Rational(num);
      coef.canonicalize();
      have_coef = true;
      skip();
      if (p < text.size() && text[p] == '*') {
        ++p;
        skip();
      }
    }
    Monomial m;
    while (p < text.size() && text[p] == 't') {
      std::size_t close = text.find(')', p);
      if (close == std::string_view::npos) throw ParseError("unterminated factor", p);
      Word w;
      try {
        w = parse_t_notation(text.substr(p, close + 1 - p));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), p + e.position());
      }
      p = close + 1;
      int power = 1;
      if (p < text.size() && text[p] == '^') {
        ++p;
        power = std::stoi(read_uint());
      }
      CyclicKey k = canonical_cyclic_key(w);
      for (int i = 0; i < power; ++i) {
        if (k.empty())
          coef *= 3;
        else
          m.push_back(intern(k));
      }
      skip();
      if (p < text.size() && text[p] == '*') {
        ++p;
        skip();
      }
    }
    if (!have_coef && m.empty()) throw ParseError("expected term", p);
    std::sort(m.begin(), m.end());
    out.add(m, sign * coef);
  }
  return out.finish();
}

MatrixExpression MatrixExpression::identity() { return word(Word()); }

MatrixExpression MatrixExpression::word(const Word& w) {
  MatrixExpression e;
  e.terms_.emplace(w, TracePolynomial(1));
  return e;
}

MatrixExpression MatrixExpression::generator(int index, int exp) {
  return word(Word::generator(index, exp));
}

void MatrixExpression::add_term(const Word& w, const TracePolynomial& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MatrixExpression& MatrixExpression::operator+=(const MatrixExpression& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

MatrixExpression& MatrixExpression::operator-=(const MatrixExpression& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

MatrixExpression operator*(const MatrixExpression& a, const MatrixExpression& b) {
  MatrixExpression out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, ca * cb);
  return out;
}

MatrixExpression operator*(const TracePolynomial& c, const MatrixExpression& a) {
  MatrixExpression out;
  for (const auto& [w, x] : a.terms_) out.add_term(w, c * x);
  return out;
}

MatrixExpression operator*(const Rational& c, const MatrixExpression& a) {
  MatrixExpression out;
  for (const auto& [w, x] : a.terms_) out.add_term(w, c * x);
  return out;
}

TracePolynomial MatrixExpression::trace() const {
  PolynomialBuilder out;
  for (const auto& [w, c] : terms_) out.add_product(TracePolynomial::trace(w), c);
  return out.finish();
}

MatrixExpression MatrixExpression::substitute(const std::map<int, Word>& words) const {
  MatrixExpression out;
  for (const auto& [w, c] : terms_) {
    Word image;
    for (const Letter& l : w.letters()) {
      auto it = words.find(l.index);
      image = image * (it == words.end() ? Word::generator(l.index, l.exp) : it->second.power(l.exp));
    }
    out.add_term(image, c.substitute(words));
  }
  return out;
}

std::string MatrixExpression::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*[" + (w.empty() ? std::string("I") : w.str()) + "]";
  }
  return s;
}

template <class S>
const S& TraceEvaluator<S>::value(Sym s) {
  auto it = cache_.find(s);
  if (it == cache_.end()) it = cache_.emplace(s, word_matrix(rep_, key_of(s).word()).trace()).first;
  return it->second;
}

template <class S>
S TraceEvaluator<S>::operator()(const TracePolynomial& p) {
  S total = S(0);
  for (const auto& [m, c] : p.terms()) {
    S term = from_rational<S>(c);
    for (Sym s : m) term *= value(s);
    total += term;
  }
  return total;
}

template <class S>
Mat3<S> TraceEvaluator<S>::operator()(const MatrixExpression& e) {
  Mat3<S> total;
  for (const auto& [w, c] : e.terms()) total += (*this)(c) * word_matrix(rep_, w);
  return total;
}

template class TraceEvaluator<Rational>;
template class TraceEvaluator<Complex>;

}  // namespace sl3
