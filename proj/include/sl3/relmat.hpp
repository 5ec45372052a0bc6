#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sl3/identities.hpp"

namespace sl3 {

enum class RelationFamily { FiveInFive, SixInFive, SixInSix };

std::string family_name(RelationFamily f);  // "five5", "six5", "six6"
RelationFamily family_from_name(const std::string& name);

struct NamedRelation {
  std::string name;
  TraceRelation relation;
};

// How a permutation in cycle notation acts on a relation: x_i -> x_sigma(i)
// or x_i -> x_sigma^-1(i). The two differ only on cycles of length >= 3.
enum class PermutationConvention { Images, Preimages };

// The source relations behind each matrix, with provenance names.
std::vector<NamedRelation> relation_family(RelationFamily f);
std::vector<NamedRelation> five_in_five_relations(PermutationConvention c);
// Order relations and the five sum relations in letters 1..5 with x5
// inverted; their top-weight parts span all relations of that class.
std::vector<NamedRelation> six_in_five_candidates();

TraceRelation six_in_five_order_relation();
// k = 1..5, linear part over the fixed twelve generators.
TraceRelation six_in_five_relation(int k);
// which = 'A' (U = x1x2x3) or 'B' (U = x1, X = x2x3, Y = x4x5).
TraceRelation six_in_six_relation(char which);

// Generator lists in t-notation.
std::vector<std::string> five_letter_columns();
std::vector<std::string> five_letter_kept();
std::vector<std::string> six_in_five_fixed();
std::vector<std::string> six_in_five_kept();
std::vector<std::string> six_letter_columns();
std::vector<std::string> six_letter_kept();

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct RelationMatrix {
  RelationFamily family = RelationFamily::FiveInFive;
  IntMatrix entries;
  std::vector<std::string> row_provenance;
  std::vector<CyclicKey> columns;
  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return columns.size(); }
};

RelationMatrix build_relation_matrix(RelationFamily f);
RelationMatrix build_five_in_five(PermutationConvention c);

// Fraction-free elimination with leftmost pivots.
int exact_rank(const IntMatrix& m);
int exact_rank(const RelationMatrix& m);
std::vector<std::size_t> pivot_columns(const IntMatrix& m);

// True iff the columns outside keep carry the full rank of m.
bool validate_complement(const RelationMatrix& m, const std::vector<CyclicKey>& keep);

// Printed matrices, when available in the library.
std::optional<IntMatrix> printed_matrix(RelationFamily f);

struct MatrixComparison {
  bool same_shape = false;
  std::size_t matched_rows = 0;  // rows found in the other matrix up to sign
  std::size_t total_rows = 0;
  bool equal_up_to_row_order() const { return same_shape && matched_rows == total_rows; }
};
MatrixComparison compare_rows(const IntMatrix& built, const IntMatrix& printed);

struct ConventionReport {
  PermutationConvention chosen = PermutationConvention::Images;
  bool images_ok = false, preimages_ok = false;
  bool images_match_print = false, preimages_match_print = false;
};
// Picks the convention under which the 12x24 system has rank 12 and admits
// the printed complement.
ConventionReport resolve_five_in_five_convention();

std::string matrix_csv(const RelationMatrix& m);

}  // namespace sl3
