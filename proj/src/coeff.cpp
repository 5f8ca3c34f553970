#include "affflag/coeff.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <vector>

namespace affflag {

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::string double_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Joins a real and an imaginary part in the "a", "b*i", "(a+b*i)" style.
std::string join_parts(const std::string& re, bool re_zero, const std::string& im, bool im_zero,
                       bool im_is_one, bool im_is_minus_one) {
  if (im_zero) return re;
  std::string imag;
  if (im_is_one) {
    imag = "i";
  } else if (im_is_minus_one) {
    imag = "-i";
  } else {
    imag = im + "*i";
  }
  if (re_zero) return imag;
  if (imag.front() == '-') return "(" + re + imag + ")";
  return "(" + re + "+" + imag + ")";
}

struct Parts {
  std::string re;
  std::string im;
};

// Splits "a+b*i" style text into its real and imaginary number strings.
// Missing parts come back empty; a bare "i" yields im = "1".
Parts split_complex(std::string text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') s.push_back(ch);
  }
  if (s.empty()) raise(ErrorCode::ParseError, "empty coefficient");
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      terms.push_back(s.substr(start, k - start));
      start = k;
    }
  }
  terms.push_back(s.substr(start));
  Parts parts;
  for (std::string term : terms) {
    if (!term.empty() && term.back() == 'i') {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term == "+") term = "1";
      if (term == "-") term = "-1";
      if (!parts.im.empty()) raise(ErrorCode::ParseError, "two imaginary parts in '" + text + "'");
      parts.im = term;
    } else {
      if (!parts.re.empty()) raise(ErrorCode::ParseError, "two real parts in '" + text + "'");
      parts.re = term;
    }
  }
  return parts;
}

mpq_class parse_rational(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) raise(ErrorCode::ParseError, "empty number");
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t decimals = s.size() - dot - 1;
      mpz_class den = 1;
      for (std::size_t k = 0; k < decimals; ++k) den *= 10;
      mpq_class q(mpz_class(digits), den);
      q.canonicalize();
      return q;
    }
    mpq_class q(s);
    if (q.get_den() == 0) raise(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    raise(ErrorCode::ParseError, "not a rational number: '" + s + "'");
  }
}

double parse_real(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    }
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) raise(ErrorCode::ParseError, "trailing characters in '" + s + "'");
    return x;
  } catch (const std::logic_error&) {
    raise(ErrorCode::ParseError, "not a number: '" + s + "'");
  }
}

}  // namespace

CoeffExact csqrt(const CoeffExact& a) {
  if (a.is_zero()) return CoeffExact::zero();
  mpq_class norm = a.re() * a.re() + a.im() * a.im();
  auto r = rational_sqrt(norm);
  if (!r) raise(ErrorCode::SqrtNotRepresentable, "|" + to_string(a) + "| is irrational");
  auto x = rational_sqrt((a.re() + *r) / 2);
  if (!x) raise(ErrorCode::SqrtNotRepresentable, "sqrt(" + to_string(a) + ") is not in Q(i)");
  if (sgn(*x) != 0) return {*x, a.im() / (2 * *x)};
  auto y = rational_sqrt((*r - a.re()) / 2);
  if (!y) raise(ErrorCode::SqrtNotRepresentable, "sqrt(" + to_string(a) + ") is not in Q(i)");
  return {mpq_class(0), *y};
}

ApproxConfig& approx_config() {
  static ApproxConfig config;
  return config;
}

CoeffApprox csqrt(const CoeffApprox& a) {
  using V = CoeffApprox::Value;
  V z = a.working_value();
  V s;
  if (z.real() < 0 && std::abs(z.imag()) < approx_config().zero_tol + a.err()) {
    // On the branch cut; rounding noise must not decide between +i and -i.
    s = {0.0L, std::sqrt(-z.real())};
  } else {
    s = std::sqrt(z);
    if (s.real() < 0 || (s.real() == 0 && s.imag() < 0)) s = -s;
  }
  if (approx_config().flip_sqrt_branch) s = -s;
  // Shadows follow the root nearest the primary one.
  auto follow = [&](V y) {
    V r = std::sqrt(y);
    return std::abs(r - s) <= std::abs(r + s) ? r : -r;
  };
  return CoeffApprox::make(s, follow(a.y1_), follow(a.y2_), follow(a.y3_));
}

std::string to_string(const CoeffExact& a) {
  return join_parts(rational_text(a.re()), sgn(a.re()) == 0, rational_text(a.im()), sgn(a.im()) == 0,
                    a.im() == 1, a.im() == -1);
}

std::string to_string(const CoeffApprox& a) {
  std::complex<double> z = a.value();
  return join_parts(double_text(z.real()), z.real() == 0, double_text(z.imag()), z.imag() == 0,
                    z.imag() == 1, z.imag() == -1);
}

CoeffExact parse_exact_coeff(const std::string& text) {
  Parts parts = split_complex(text);
  mpq_class re = parts.re.empty() ? mpq_class(0) : parse_rational(parts.re);
  mpq_class im = parts.im.empty() ? mpq_class(0) : parse_rational(parts.im);
  return {re, im};
}

CoeffApprox parse_approx_coeff(const std::string& text) {
  Parts parts = split_complex(text);
  double re = parts.re.empty() ? 0.0 : parse_real(parts.re);
  double im = parts.im.empty() ? 0.0 : parse_real(parts.im);
  return CoeffApprox(std::complex<double>(re, im));
}

}  // namespace affflag
