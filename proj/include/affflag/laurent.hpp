#pragma once

// Truncated formal Laurent series  f = sum_{k >= val} c_k t^k + O(t^prec).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "affflag/coeff.hpp"

namespace affflag {

/// Absolute precision of an exact zero. All precisions are clamped here.
inline constexpr long kExactPrec = 1L << 28;

/// Relative precision (stored terms) given to monomials and polynomials that
/// are built without an explicit O(t^p).
inline int& default_terms() {
  static int terms = 32;
  return terms;
}

template <Coefficient C>
class LaurentSeries {
 public:
  using coeff_type = C;

  /// Exact zero.
  LaurentSeries() = default;

  /// coeffs[k] multiplies t^(val + k); known modulo O(t^(val + coeffs.size())).
  LaurentSeries(long val, std::vector<C> coeffs) : val_(val), coeffs_(std::move(coeffs)) {
    prec_ = val_ + static_cast<long>(coeffs_.size());
    normalize();
  }

  /// Zero known modulo O(t^prec).
  static LaurentSeries zero(long prec = kExactPrec) {
    LaurentSeries f;
    f.prec_ = std::min(prec, kExactPrec);
    f.val_ = f.prec_;
    return f;
  }

  static LaurentSeries monomial(const C& c, long k, int terms = default_terms()) {
    if (c.is_zero()) return zero();
    std::vector<C> cs(static_cast<std::size_t>(std::max(terms, 1)), C::zero());
    cs[0] = c;
    return LaurentSeries(k, std::move(cs));
  }

  static LaurentSeries one(int terms = default_terms()) { return monomial(C::one(), 0, terms); }
  static LaurentSeries t_pow(long k, int terms = default_terms()) { return monomial(C::one(), k, terms); }
  static LaurentSeries constant(const C& c, int terms = default_terms()) { return monomial(c, 0, terms); }

  /// Polynomial (finite Laurent polynomial) with relative precision `terms`,
  /// but always known at least one degree past its top term.
  static LaurentSeries polynomial(const std::map<long, C>& terms_by_exp, int terms = default_terms()) {
    long lo = 0;
    long hi = 0;
    bool any = false;
    for (const auto& [k, c] : terms_by_exp) {
      if (c.is_zero()) continue;
      if (!any) lo = hi = k;
      lo = std::min(lo, k);
      hi = std::max(hi, k);
      any = true;
    }
    if (!any) return zero();
    long prec = std::max(lo + terms, hi + 1);
    std::vector<C> cs(static_cast<std::size_t>(prec - lo), C::zero());
    for (const auto& [k, c] : terms_by_exp) {
      if (!c.is_zero()) cs[static_cast<std::size_t>(k - lo)] += c;
    }
    return LaurentSeries(lo, std::move(cs));
  }

  long val() const { return val_; }
  long prec() const { return prec_; }
  const std::vector<C>& coeffs() const { return coeffs_; }

  /// Zero to the known precision.
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact_zero() const { return coeffs_.empty() && prec_ >= kExactPrec; }

  /// Valuation. Raises PrecisionExhausted on a zero-to-precision series.
  long ord() const {
    if (coeffs_.empty()) {
      raise(ErrorCode::PrecisionExhausted, "ord of a series that is zero to O(t^" + std::to_string(prec_) + ")");
    }
    return val_;
  }

  /// ord when known, otherwise the lower bound prec.
  long ord_bound() const { return val_; }

  const C& lead() const {
    if (coeffs_.empty()) raise(ErrorCode::PrecisionExhausted, "leading coefficient of a zero series");
    return coeffs_.front();
  }

  /// Coefficient of t^k; raises PrecisionExhausted when k is beyond the known window.
  C coeff(long k) const {
    if (k >= prec_) raise(ErrorCode::PrecisionExhausted, "coefficient of t^" + std::to_string(k) + " is unknown");
    if (k < val_) return C::zero();
    return coeffs_[static_cast<std::size_t>(k - val_)];
  }

  /// Forgets everything from t^p on.
  LaurentSeries truncated(long p) const {
    if (p >= prec_) return *this;
    if (p <= val_) return zero(p);
    LaurentSeries f;
    f.val_ = val_;
    f.prec_ = p;
    f.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + (p - val_));
    return f;
  }

  /// Multiplication by t^k, exact.
  LaurentSeries shifted(long k) const {
    if (is_exact_zero()) return *this;
    LaurentSeries f = *this;
    f.val_ += k;
    f.prec_ = std::min(f.prec_ + k, kExactPrec);
    return f;
  }

  LaurentSeries operator-() const {
    LaurentSeries f = *this;
    for (auto& c : f.coeffs_) c = -c;
    return f;
  }

  friend LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, false); }
  friend LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, true); }

  friend LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
    long prec = std::min({f.prec_ + g.val_, g.prec_ + f.val_, kExactPrec});
    long lo = f.val_ + g.val_;
    if (f.coeffs_.empty() || g.coeffs_.empty() || prec <= lo) return zero(prec);
    std::size_t n = static_cast<std::size_t>(prec - lo);
    std::vector<C> out(n, C::zero());
    std::size_t nf = std::min(n, f.coeffs_.size());
    for (std::size_t a = 0; a < nf; ++a) {
      if (stored_zero(f.coeffs_[a])) continue;
      std::size_t ng = std::min(n - a, g.coeffs_.size());
      for (std::size_t b = 0; b < ng; ++b) out[a + b] += f.coeffs_[a] * g.coeffs_[b];
    }
    return LaurentSeries(lo, std::move(out));
  }

  friend LaurentSeries operator*(const C& c, const LaurentSeries& f) {
    if (stored_zero(c)) return zero();
    LaurentSeries g = f;
    for (auto& x : g.coeffs_) x = c * x;
    g.normalize();
    return g;
  }

  LaurentSeries& operator+=(const LaurentSeries& g) { return *this = *this + g; }
  LaurentSeries& operator-=(const LaurentSeries& g) { return *this = *this - g; }
  LaurentSeries& operator*=(const LaurentSeries& g) { return *this = *this * g; }

  /// Exact backend: Newton iteration y <- y (2 - u y) on the unit part.
  /// Approx backend: the coefficient recurrence, so that every coefficient's
  /// magnitude bound accumulates through ordinary arithmetic.
  LaurentSeries inv() const {
    if (coeffs_.empty()) raise(ErrorCode::DivisionByZero, "inverse of a zero series");
    long r = prec_ - val_;
    if constexpr (!C::is_exact) {
      std::vector<C> y(static_cast<std::size_t>(r), C::zero());
      y[0] = C::one() / coeffs_[0];
      for (std::size_t k = 1; k < y.size(); ++k) {
        C acc = C::zero();
        for (std::size_t j = 1; j <= k && j < coeffs_.size(); ++j) acc += coeffs_[j] * y[k - j];
        y[k] = -(acc * y[0]);
      }
      return LaurentSeries(-val_, std::move(y));
    }
    LaurentSeries u(0, coeffs_);
    LaurentSeries y(0, {C::one() / coeffs_.front()});
    long m = 1;
    LaurentSeries two = constant(C::from_int(2), static_cast<int>(r));
    while (m < r) {
      m = std::min(2 * m, r);
      LaurentSeries ym(0, padded(y, m));
      y = (ym * (two - u.truncated(m) * ym)).truncated(m);
    }
    return y.truncated(r).shifted(-val_);
  }

  /// Exact backend: Newton iteration s <- (s + u/s)/2 on the unit part; leading
  /// root from csqrt. Approx backend: the coefficient recurrence, as for inv.
  LaurentSeries sqrt() const {
    if (coeffs_.empty()) raise(ErrorCode::PrecisionExhausted, "square root of a zero series");
    if (val_ % 2 != 0) raise(ErrorCode::OddValuation, "ord " + std::to_string(val_) + " is odd");
    long r = prec_ - val_;
    if constexpr (!C::is_exact) {
      std::vector<C> s(static_cast<std::size_t>(r), C::zero());
      s[0] = csqrt(coeffs_[0]);
      C two_s0_inv = C::one() / (C::from_int(2) * s[0]);
      for (std::size_t k = 1; k < s.size(); ++k) {
        C acc = k < coeffs_.size() ? coeffs_[k] : C::zero();
        for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc * two_s0_inv;
      }
      return LaurentSeries(val_ / 2, std::move(s));
    }
    LaurentSeries u(0, coeffs_);
    LaurentSeries s(0, {csqrt(coeffs_.front())});
    C half = C::one() / C::from_int(2);
    long m = 1;
    while (m < r) {
      m = std::min(2 * m, r);
      LaurentSeries sm(0, padded(s, m));
      s = (half * (sm + u.truncated(m) * sm.inv())).truncated(m);
    }
    return s.truncated(r).shifted(val_ / 2);
  }

  /// Agreement to the common precision.
  friend bool operator==(const LaurentSeries& f, const LaurentSeries& g) { return (f - g).is_zero(); }

 private:
  // A coefficient that contributes nothing to a product. Approx values below the
  // zero tolerance still carry information, so only a literal zero is skipped.
  static bool stored_zero(const C& c) {
    if constexpr (C::is_exact) {
      return c.is_zero();
    } else {
      return c.value() == std::complex<double>(0.0, 0.0);
    }
  }

  // Coefficients of f on [0, m), zero-padded: the Newton seed is extended before lifting.
  static std::vector<C> padded(const LaurentSeries& f, long m) {
    std::vector<C> cs(static_cast<std::size_t>(m), C::zero());
    for (long k = std::max(f.val_, 0L); k < std::min(f.prec_, m); ++k) cs[static_cast<std::size_t>(k)] = f.coeff(k);
    return cs;
  }

  static LaurentSeries combine(const LaurentSeries& f, const LaurentSeries& g, bool subtract) {
    long prec = std::min(f.prec_, g.prec_);
    long lo = std::min(f.val_, g.val_);
    if (prec <= lo) return zero(prec);
    std::vector<C> out(static_cast<std::size_t>(prec - lo), C::zero());
    for (long k = f.val_; k < std::min(prec, f.prec_); ++k) out[static_cast<std::size_t>(k - lo)] = f.coeffs_[k - f.val_];
    for (long k = g.val_; k < std::min(prec, g.prec_); ++k) {
      const C& c = g.coeffs_[static_cast<std::size_t>(k - g.val_)];
      auto& slot = out[static_cast<std::size_t>(k - lo)];
      slot = subtract ? slot - c : slot + c;
    }
    return LaurentSeries(lo, std::move(out));
  }

  void normalize() {
    if constexpr (!C::is_exact) {
      // Precision ends at the first coefficient rounding has made unreliable.
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].reliable()) {
          coeffs_.resize(k);
          prec_ = val_ + static_cast<long>(k);
          break;
        }
      }
    }
    std::size_t skip = 0;
    while (skip < coeffs_.size() && coeffs_[skip].is_zero()) ++skip;
    if (skip > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(skip));
    val_ += static_cast<long>(skip);
    if (coeffs_.empty()) val_ = prec_;
  }

  long val_ = kExactPrec;
  std::vector<C> coeffs_;
  long prec_ = kExactPrec;
};

using SeriesExact = LaurentSeries<CoeffExact>;
using SeriesApprox = LaurentSeries<CoeffApprox>;

/// "1 + 2*t + (1+i)*t^3 + O(t^5)". Exact zero prints as "0".
template <Coefficient C>
std::string to_string(const LaurentSeries<C>& f) {
  if (f.is_exact_zero()) return "0";
  std::string out;
  long k = f.val();
  for (const C& c : f.coeffs()) {
    if (!c.is_zero()) {
      std::string cs = to_string(c);
      std::string mono;
      if (k == 1) {
        mono = "t";
      } else if (k != 0) {
        mono = "t^" + std::to_string(k);
      }
      std::string term;
      if (mono.empty()) {
        term = cs;
      } else if (c.is_one()) {
        term = mono;
      } else if ((-c).is_one()) {
        term = "-" + mono;
      } else {
        term = cs + "*" + mono;
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    ++k;
  }
  if (!out.empty()) out += " + ";
  out += "O(t^" + std::to_string(f.prec()) + ")";
  return out;
}

namespace detail {

inline std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  char prev = '\0';
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool sign = (ch == '+' || ch == '-');
    if (sign && depth == 0 && !cur.empty() && prev != '^' && prev != '*' && prev != '/' && prev != 'e' &&
        prev != 'E') {
      terms.push_back(cur);
      cur.clear();
    }
    if (!(ch == '+' && cur.empty())) cur.push_back(ch);
    prev = ch;
  }
  if (depth != 0) raise(ErrorCode::ParseError, "unbalanced parentheses in '" + text + "'");
  if (!cur.empty()) terms.push_back(cur);
  return terms;
}

inline long parse_exponent(std::string s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  try {
    std::size_t used = 0;
    long k = std::stol(s, &used);
    if (used != s.size()) raise(ErrorCode::ParseError, "bad exponent '" + s + "'");
    return k;
  } catch (const std::logic_error&) {
    raise(ErrorCode::ParseError, "bad exponent '" + s + "'");
  }
}

}  // namespace detail

/// Parses the shorthand "t^-2 + 3*t + i*t^4", optionally ending in "+ O(t^p)".
/// Without an O-term the result carries relative precision `terms`.
template <Coefficient C>
LaurentSeries<C> parse_series(const std::string& text, int terms = default_terms()) {
  std::map<long, C> by_exp;
  long explicit_prec = kExactPrec;
  bool has_prec = false;
  for (const std::string& term : detail::split_terms(text)) {
    if (term.rfind("O(", 0) == 0 && term.back() == ')') {
      std::string inner = term.substr(2, term.size() - 3);
      if (inner.rfind("t^", 0) == 0) {
        explicit_prec = detail::parse_exponent(inner.substr(2));
      } else if (inner == "t") {
        explicit_prec = 1;
      } else if (inner == "1") {
        explicit_prec = 0;
      } else {
        raise(ErrorCode::ParseError, "bad precision term '" + term + "'");
      }
      has_prec = true;
      continue;
    }
    // The variable is the 't' outside any parentheses.
    std::size_t tpos = std::string::npos;
    int depth = 0;
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '(') ++depth;
      if (term[k] == ')') --depth;
      if (term[k] == 't' && depth == 0) tpos = k;
    }
    long exp = 0;
    std::string coeff_text = term;
    if (tpos != std::string::npos) {
      std::string rest = term.substr(tpos + 1);
      if (rest.empty()) {
        exp = 1;
      } else if (rest.front() == '^') {
        exp = detail::parse_exponent(rest.substr(1));
      } else {
        raise(ErrorCode::ParseError, "bad term '" + term + "'");
      }
      coeff_text = term.substr(0, tpos);
      if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
    }
    C c;
    if (coeff_text.empty() || coeff_text == "+") {
      c = C::one();
    } else if (coeff_text == "-") {
      c = -C::one();
    } else if (coeff_text.front() == '-' && coeff_text.size() > 1 && coeff_text[1] == '(') {
      c = -parse_coeff<C>(coeff_text.substr(1));
    } else {
      c = parse_coeff<C>(coeff_text);
    }
    auto [it, inserted] = by_exp.emplace(exp, c);
    if (!inserted) it->second += c;
  }
  if (!has_prec) return LaurentSeries<C>::polynomial(by_exp, terms);
  long lo = explicit_prec;
  for (const auto& [k, c] : by_exp) lo = std::min(lo, k);
  std::vector<C> cs(static_cast<std::size_t>(std::max(0L, explicit_prec - lo)), C::zero());
  for (const auto& [k, c] : by_exp) {
    if (k < explicit_prec) cs[static_cast<std::size_t>(k - lo)] += c;
  }
  if (cs.empty()) return LaurentSeries<C>::zero(explicit_prec);
  return LaurentSeries<C>(lo, std::move(cs));
}

}  // namespace affflag
