#include "plumbing/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace plumbing {

namespace {

std::complex<double> power(std::complex<double> z, std::int64_t k) {
  if (k < 0) return 1.0 / power(z, -k);
  std::complex<double> out = 1;
  for (; k > 0; k >>= 1, z *= z)
    if (k & 1) out *= z;
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::size_t vars, const Integer& c) {
  LaurentPoly p(vars);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Integer& c) {
  LaurentPoly p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::binomial(const Exponent& e) {
  LaurentPoly p = monomial(e);
  p.add_term(Exponent(e.size(), 0), -1);
  return p;
}

void LaurentPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != vars_) throw std::invalid_argument("LaurentPoly: exponent has wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
  LaurentPoly out(vars_);
  Exponent e(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly out = constant(vars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw InexactDivision("division by zero polynomial");
  if (vars_ != d.vars_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
  LaurentPoly q(vars_);
  if (is_zero()) return q;
  // Lex-leading term elimination. If the division is exact, every quotient
  // exponent lies in the box given by per-variable degree ranges; leaving it
  // means there is a remainder (and also bounds the loop).
  const auto& [d_lead, d_coef] = *d.terms_.rbegin();
  Exponent lo(vars_), hi(vars_);
  for (std::size_t i = 0; i < vars_; ++i) {
    auto range = [i](const LaurentPoly& p) {
      std::int64_t a = p.terms_.begin()->first[i], b = a;
      for (const auto& [e, c] : p.terms_) {
        a = std::min(a, e[i]);
        b = std::max(b, e[i]);
      }
      return std::make_pair(a, b);
    };
    const auto [amin, amax] = range(*this);
    const auto [dmin, dmax] = range(d);
    lo[i] = amin - dmin;
    hi[i] = amax - dmax;
  }
  LaurentPoly rem = *this;
  while (!rem.is_zero()) {
    const auto& [r_lead, r_coef] = *rem.terms_.rbegin();
    if (r_coef % d_coef != 0) throw InexactDivision("non-integral quotient coefficient");
    Exponent e(vars_);
    for (std::size_t i = 0; i < vars_; ++i) e[i] = r_lead[i] - d_lead[i];
    for (std::size_t i = 0; i < vars_; ++i)
      if (e[i] < lo[i] || e[i] > hi[i]) throw InexactDivision("polynomial division leaves a remainder");
    const LaurentPoly term = monomial(e, r_coef / d_coef);
    q = q + term;
    rem = rem - term * d;
  }
  return q;
}

LaurentPoly LaurentPoly::normalized() const {
  if (is_zero()) return *this;
  Exponent low = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < vars_; ++i) low[i] = std::min(low[i], e[i]);
  LaurentPoly out(vars_);
  Exponent s(vars_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < vars_; ++i) s[i] = e[i] - low[i];
    out.add_term(s, c);
  }
  if (out.terms_.begin()->second < 0)
    for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::diagonal() const {
  LaurentPoly out(1);
  for (const auto& [e, c] : terms_) {
    std::int64_t deg = 0;
    for (auto x : e) deg += x;
    out.add_term({deg}, c);
  }
  return out;
}

std::complex<double> LaurentPoly::evaluate(const std::vector<std::complex<double>>& t) const {
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> v = c.convert_to<double>();
    for (std::size_t i = 0; i < vars_; ++i)
      if (e[i] != 0) v *= power(t[i], e[i]);
    sum += v;
  }
  return sum;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const Integer a = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      if (any) mono << '*';
      any = true;
      mono << 't';
      if (vars_ > 1) mono << i + 1;
      if (e[i] != 1) mono << '^' << e[i];
    }
    if (!any)
      out << a;
    else if (a == 1)
      out << mono.str();
    else
      out << a << '*' << mono.str();
  }
  return out.str();
}

}  // namespace plumbing
