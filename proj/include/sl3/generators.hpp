#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "sl3/reducer.hpp"

namespace sl3 {

// Binomial coefficient C(n, k); zero when k > n.
mpz_class binomial(int n, int k);

// Closed form for the size of the minimal generating set.
mpz_class count_formula(int r);
// The same count as a binomial sum over the number of letters.
mpz_class count_binomial_sum(int r);

struct TypeCountRow {
  GeneratorType type = GeneratorType::X;
  int multiplier = 0;
  int letters = 0;  // count = multiplier * C(r, letters)
  mpz_class count;
};

struct TypeCountTable {
  int r = 0;
  std::vector<TypeCountRow> rows;  // type table order
  mpz_class total() const;
};

// The nineteen types in type table order.
const std::vector<GeneratorType>& table_order();
int table_multiplier(GeneratorType t);
TypeCountTable type_counts(int r);

// Minimal generating set for rank r, ordered by (weight, letters, table
// row, letter tuple, key).
std::vector<GeneratorInstance> enumerate_minimal_set(int r);

struct Partition {
  std::vector<int> parts;  // weakly decreasing
  std::string str() const;
};

// Weights of the irreducible subspaces of the degree <= 6 invariants.
const std::vector<Partition>& weight_list();

mpz_class irrep_dimension(const Partition& p, int r);

struct DimensionReport {
  int r = 0;
  mpz_class irrep_total;  // before dropping the r cubes
  mpz_class expected;     // count_formula(r)
  bool passed = false;
  std::string message;
};
DimensionReport dimension_crosscheck(int r);

}  // namespace sl3
