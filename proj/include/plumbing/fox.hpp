#pragma once

#include "plumbing/group.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace plumbing {

using AbelianPtr = std::shared_ptr<const AbelianizedGroup>;
using Monomial = std::vector<std::int64_t>;  // normal-form coordinates
using Complex = std::complex<double>;

/// Element of Z[H_1]: integer combination of monomials kept in the
/// normal form of the abelianization (torsion exponents reduced, free
/// exponents as they are).
class GroupAlgebraElement {
public:
  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(AbelianPtr ab) : ab_(std::move(ab)) {}

  static GroupAlgebraElement constant(AbelianPtr ab, const Integer& c);
  /// c * (image of the group element with these generator exponents).
  static GroupAlgebraElement from_exponents(AbelianPtr ab, const std::vector<std::int64_t>& x, const Integer& c = 1);
  static GroupAlgebraElement generator(AbelianPtr ab, std::size_t gen, std::int64_t power = 1);

  const AbelianPtr& group() const { return ab_; }
  const std::map<Monomial, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& normal_form, const Integer& c);

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-() const;
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);

  /// Augmentation: sum of coefficients (value at the trivial character).
  Integer augmentation() const;

  /// Terms compared; both sides must share a normal form.
  bool operator==(const GroupAlgebraElement& o) const { return terms_ == o.terms_; }

  Complex evaluate(const std::vector<Complex>& coordinate_values) const;

  /// Monomial sum such as `2*t(z1)^-1*t(w1) - 1`; "0" for zero.
  std::string to_string() const;

private:
  AbelianPtr ab_;
  std::map<Monomial, Integer> terms_;
};

/// z^k by repeated squaring (exact for z = 1 and small integer powers).
Complex ipow(Complex z, std::int64_t k);

/// Names of the normal-form coordinates: w1.. for torsion, z1.. for free.
std::vector<std::string> coordinate_names(const AbelianizedGroup& ab);

/// Values of the normal-form coordinates under a character given on
/// generators. Torsion coordinates are snapped to the exact root of unity.
/// Throws std::invalid_argument if the values do not kill the relations
/// (relative tolerance `tol`).
std::vector<Complex> coordinate_values(const AbelianizedGroup& ab, const std::vector<Complex>& generator_values,
                                       double tol = 1e-9);

/// Fox derivative of `w` with respect to generator `gen`.
GroupAlgebraElement fox_derivative(const Word& w, std::size_t gen, const AbelianPtr& ab);

struct FoxBlock {
  std::string name;
  std::size_t row_begin, row_end;
  std::size_t col_begin, col_end;
};

struct FoxMatrix {
  AbelianPtr ab;
  std::size_t rows = 0, cols = 0;
  std::vector<GroupAlgebraElement> entries;  // row-major
  std::vector<RelatorKind> row_tags;
  std::vector<GeneratorKind> col_tags;
  std::vector<FoxBlock> blocks;  // empty for the generic matrix

  GroupAlgebraElement& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const GroupAlgebraElement& operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Entrywise Fox derivatives of every relator.
FoxMatrix fox_matrix_generic(const Presentation& p, AbelianPtr ab);
FoxMatrix fox_matrix_generic(const Presentation& p);

/// Block matrix assembled from the graph alone. Rows: one per vertex, one per
/// arrowhead (none omitted), one per extra edge, two per genus pair; columns
/// follow the generator order of presentation(og). `ab` must be the
/// abelianization of that presentation.
FoxMatrix fox_matrix_blocks(const OrderedGraph& og, AbelianPtr ab);

Eigen::MatrixXcd evaluate(const FoxMatrix& F, const std::vector<Complex>& generator_values, double tol = 1e-9);

/// Deterministic text dump with block boundaries.
std::string format_fox(const FoxMatrix& F, const Presentation& p);

}  // namespace plumbing
