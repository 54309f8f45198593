#include "plumbing/smith.hpp"

#include <stdexcept>
#include <utility>

namespace plumbing {

Integer determinant(const IntMatrix& m_in) {
  if (m_in.rows() != m_in.cols()) throw std::invalid_argument("determinant: matrix is not square");
  IntMatrix m = m_in;
  const std::size_t n = m.rows();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : sign * m(n - 1, n - 1);
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

class Reducer {
public:
  explicit Reducer(const IntMatrix& M)
      : D(M), P(IntMatrix::identity(M.rows())), Q(IntMatrix::identity(M.cols())) {}

  IntMatrix D, P, Q;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    for (std::size_t j = 0; j < P.cols(); ++j) std::swap(P(a, j), P(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    for (std::size_t i = 0; i < Q.rows(); ++i) std::swap(Q(i, a), Q(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(dst, j) += k * D(src, j);
    for (std::size_t j = 0; j < P.cols(); ++j) P(dst, j) += k * P(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, dst) += k * D(i, src);
    for (std::size_t i = 0; i < Q.rows(); ++i) Q(i, dst) += k * Q(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(r, j) = -D(r, j);
    for (std::size_t j = 0; j < P.cols(); ++j) P(r, j) = -P(r, j);
  }

  // Smallest nonzero |entry| in the trailing block starting at t.
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        if (D(i, j) == 0) continue;
        Integer a = abs(D(i, j));
        if (!found || a < best) {
          best = a;
          pr = i;
          pc = j;
          found = true;
        }
      }
    return found;
  }
};

// Floor-free quotient rounding toward zero is enough: remainders shrink below the pivot.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  Reducer red(M);
  const std::size_t limit = std::min(M.rows(), M.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!red.find_pivot(t, pr, pc)) break;
    for (;;) {
      red.swap_rows(t, pr);
      red.swap_cols(t, pc);
      bool dirty = false;
      for (std::size_t i = t + 1; i < red.D.rows(); ++i) {
        if (red.D(i, t) == 0) continue;
        red.add_row(i, t, -quotient(red.D(i, t), red.D(t, t)));
        if (red.D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < red.D.cols(); ++j) {
        if (red.D(t, j) == 0) continue;
        red.add_col(j, t, -quotient(red.D(t, j), red.D(t, t)));
        if (red.D(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // divisibility of the trailing block
        bool fixed = true;
        for (std::size_t i = t + 1; i < red.D.rows() && fixed; ++i)
          for (std::size_t j = t + 1; j < red.D.cols(); ++j)
            if (red.D(i, j) % red.D(t, t) != 0) {
              red.add_row(t, i, 1);
              fixed = false;
              break;
            }
        if (fixed) break;
      }
      red.find_pivot(t, pr, pc);
    }
    if (red.D(t, t) < 0) red.negate_row(t);
  }
  SmithForm out{std::move(red.D), std::move(red.P), std::move(red.Q), t};
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const std::size_t n = U.rows();
  if (U.cols() != n) throw std::invalid_argument("unimodular_inverse: matrix is not square");
  // Gauss-Jordan over the rationals; the result is integral for det = +-1.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(U(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::invalid_argument("unimodular_inverse: singular matrix");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (boost::multiprecision::denominator(x) != 1)
        throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
      inv(i, j) = boost::multiprecision::numerator(x);
    }
  return inv;
}

}  // namespace plumbing
