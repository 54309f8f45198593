#pragma once

#include "plumbing/integer.hpp"

#include <vector>

namespace plumbing {

/// P * M * Q = D with P, Q unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix D;
  IntMatrix P;
  IntMatrix Q;
  std::size_t rank = 0;

  /// Nonzero diagonal entries of D, in order.
  std::vector<Integer> invariant_factors() const;
};

/// Pivots on the entry of smallest absolute value to keep coefficients small.
SmithForm smith_normal_form(const IntMatrix& M);

/// Inverse of a unimodular matrix, exact. Throws if det is not +-1.
IntMatrix unimodular_inverse(const IntMatrix& U);

}  // namespace plumbing
