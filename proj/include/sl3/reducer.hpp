#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sl3/identities.hpp"
#include "sl3/trpoly.hpp"

namespace sl3 {

// The nineteen word shapes that span the coordinate ring.
enum class GeneratorType {
  X,
  Xinv,
  XY,
  XYZ,
  XYinv,
  XinvYinv,
  XYZinv,
  WXYZ,
  VWXYZ,
  WXYZinv,
  XYZYinv,
  XYinvZinv,
  XinvYinvZinv,
  WXYinvZinv,
  XYZinvYinv,
  XYXinvYinv,
  VWXYZinv,
  WXYZYinv,
  UVWXYZ,
};

constexpr int kGeneratorTypeCount = 19;

std::string type_label(GeneratorType t);
int type_letter_count(GeneratorType t);
int type_weight(GeneratorType t);
std::vector<GeneratorType> all_generator_types();

// Structural type of a basis key; nullopt when the key is not in basis form.
std::optional<GeneratorType> classify(const CyclicKey& key);

struct GeneratorInstance {
  GeneratorType type = GeneratorType::X;
  std::vector<int> letters;  // distinct letter indices, ascending
  Word word;
  CyclicKey key;
};

GeneratorInstance make_instance(const CyclicKey& key);

struct RewriteRule {
  GeneratorInstance removed;
  TracePolynomial replacement;
};

// Basis form: exponents +-1, no letter repeated with the same sign, weighted
// length <= 6, inverse letters cyclically adjacent, and for a single letter
// occurring with both signs the orientation with the smaller key.
bool is_basis_key(const CyclicKey& key);

// Multidegree pattern of a key over its letters in ascending order.
struct LetterClass {
  std::vector<int> pattern;
  std::vector<int> letters;
};
LetterClass letter_class(const CyclicKey& key);

// All basis keys with a given multidegree pattern over letters 1..k, and the
// kept/removed split.
struct DegreeClass {
  std::vector<int> pattern;
  GeneratorType type = GeneratorType::X;
  std::vector<Sym> symbols;  // ascending key order
  std::vector<Sym> kept;
  std::vector<Sym> removed;
  bool printed_choice = false;
  std::vector<std::string> relation_sources;  // provenance of selected rows
};

class Reducer {
 public:
  static Reducer& shared();

  TracePolynomial reduce_to_basis(const Word& w);
  TracePolynomial reduce_to_basis(const TracePolynomial& p);
  TracePolynomial reduce_to_minimal(const TracePolynomial& p, int r);

  // Rules over all letter tuples drawn from 1..r.
  std::vector<RewriteRule> tier2_rules(int r);

  const DegreeClass& degree_class(const std::vector<int>& pattern);
  // Patterns over letters 1..k (k <= 6) that contain basis keys.
  const std::vector<std::vector<int>>& patterns();
  bool is_minimal_key(const CyclicKey& key);

  // Local rules of a class, keyed by removed symbol.
  const std::map<Sym, TracePolynomial>& class_rules(const std::vector<int>& pattern);

 private:
  Reducer() = default;

  struct ClassData {
    DegreeClass info;
    std::vector<TracePolynomial> relations;  // selected, reduced, each = 0
    std::vector<std::vector<Rational>> rows;
    bool rules_ready = false;
    std::map<Sym, TracePolynomial> rules;
  };

  TracePolynomial basis_of(Sym s);
  TracePolynomial minimal_of(Sym s);
  ClassData& class_data(const std::vector<int>& pattern);
  void build_rules(ClassData& cd);

  std::recursive_mutex mu_;
  std::unordered_map<Sym, PackedPolynomial> basis_memo_;
  std::unordered_map<Sym, PackedPolynomial> minimal_memo_;
  std::map<std::vector<int>, std::unique_ptr<ClassData>> classes_;
  std::vector<std::vector<int>> patterns_;
};

TracePolynomial reduce_to_basis(const Word& w);
TracePolynomial reduce_to_basis(const TracePolynomial& p);
TracePolynomial reduce_to_minimal(const TracePolynomial& p, int r);
std::vector<RewriteRule> tier2_rules(int r);

// Renames letters by an injective map; unmapped letters are kept.
Word relabel(const Word& w, const std::map<int, int>& m);
TracePolynomial relabel(const TracePolynomial& p, const std::map<int, int>& m);

}  // namespace sl3
