#pragma once

#include "plumbing/integer.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace plumbing {

class InexactDivision : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial in a fixed number of variables with exact integer
/// coefficients. Monomials are kept in a map keyed by exponent vector, so
/// iteration runs in lexicographic order.
class LaurentPoly {
public:
  using Exponent = std::vector<std::int64_t>;

  explicit LaurentPoly(std::size_t vars = 1) : vars_(vars) {}
  static LaurentPoly constant(std::size_t vars, const Integer& c);
  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1);
  /// t^e - 1
  static LaurentPoly binomial(const Exponent& e);

  std::size_t variables() const { return vars_; }
  const std::map<Exponent, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Integer& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly pow(unsigned k) const;
  bool operator==(const LaurentPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  /// Exact quotient; throws InexactDivision when `d` does not divide.
  LaurentPoly divide_exact(const LaurentPoly& d) const;

  /// Unit normalization: shift so every variable's minimal exponent is 0,
  /// then make the lex-smallest monomial's coefficient positive.
  LaurentPoly normalized() const;

  /// Substitutes t_1 = ... = t_r = t.
  LaurentPoly diagonal() const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& t) const;

  /// Human-readable, highest lex monomial first: `t1^5*t2^2 + t1^2*t2 + 1`.
  /// A single variable prints as `t`.
  std::string to_string() const;

private:
  std::size_t vars_;
  std::map<Exponent, Integer> terms_;
};

}  // namespace plumbing
