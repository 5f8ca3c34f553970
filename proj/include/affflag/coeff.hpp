#pragma once

// Scalars of the base field. Two interchangeable backends:
//   CoeffExact  - Gaussian rationals Q(i), exact; square roots only when they exist in Q(i).
//   CoeffApprox - complex doubles; square roots always exist (principal branch).

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "affflag/error.hpp"

namespace affflag {

class CoeffExact {
 public:
  static constexpr bool is_exact = true;
  static constexpr const char* backend_name = "exact";

  CoeffExact() = default;
  CoeffExact(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static CoeffExact zero() { return {}; }
  static CoeffExact one() { return from_int(1); }
  static CoeffExact imag_unit() { return from_int(0, 1); }
  static CoeffExact from_int(long re, long im = 0) { return {mpq_class(re), mpq_class(im)}; }
  static CoeffExact from_rational(long num, long den) { return {mpq_class(num, den), mpq_class(0)}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  friend CoeffExact operator+(const CoeffExact& a, const CoeffExact& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend CoeffExact operator-(const CoeffExact& a, const CoeffExact& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend CoeffExact operator*(const CoeffExact& a, const CoeffExact& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend CoeffExact operator/(const CoeffExact& a, const CoeffExact& b) {
    if (b.is_zero()) raise(ErrorCode::DivisionByZero, "exact coefficient division by zero");
    mpq_class norm = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / norm, (a.im_ * b.re_ - a.re_ * b.im_) / norm};
  }
  CoeffExact operator-() const { return {-re_, -im_}; }
  CoeffExact& operator+=(const CoeffExact& b) { return *this = *this + b; }
  CoeffExact& operator-=(const CoeffExact& b) { return *this = *this - b; }
  CoeffExact& operator*=(const CoeffExact& b) { return *this = *this * b; }

  friend bool operator==(const CoeffExact& a, const CoeffExact& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Square root in Q(i), principal branch (re >= 0, and im >= 0 when re == 0).
/// Throws SqrtNotRepresentable when no root lies in Q(i).
CoeffExact csqrt(const CoeffExact& a);

/// Module-wide settings of the approximate backend. Set these before starting
/// a computation; they are read on every zero test and square root.
struct ApproxConfig {
  double zero_tol = 1e-9;
  bool flip_sqrt_branch = false;
};

ApproxConfig& approx_config();

namespace detail {
inline thread_local std::uint64_t perturb_state = 0x9e3779b97f4a7c15ULL;

/// Random rounding of a shadow sample by about one ulp (deterministic xorshift stream).
inline std::complex<long double> perturb(std::complex<long double> z) {
  std::uint64_t& s = perturb_state;
  s ^= s << 13;
  s ^= s >> 7;
  s ^= s << 17;
  constexpr long double up = 1.0L + 0x1p-63L;
  constexpr long double down = 1.0L - 0x1p-64L;
  return {z.real() * ((s & 1U) ? up : down), z.imag() * ((s & 2U) ? up : down)};
}
}  // namespace detail

/// Complex float (long double inside, double at the interface) with three shadow
/// samples carried through the same operations under random rounding. Their spread estimates the accumulated rounding error
/// of the primary value (stochastic arithmetic). A value is reliable when that
/// estimate cannot flip the zero test |z| < zero_tol; series drop their precision
/// at the first unreliable coefficient, so every zero test on what they keep is certain.
class CoeffApprox {
 public:
  static constexpr bool is_exact = false;
  static constexpr const char* backend_name = "approx";
  /// Safety factor applied to the observed sample spread.
  static constexpr double kSpreadFactor = 16.0;

  /// Working type: extended precision, read out as double.
  using Value = std::complex<long double>;

  CoeffApprox() = default;
  /// Input value, taken as exact.
  CoeffApprox(std::complex<double> z) : CoeffApprox(Value(z)) {}
  explicit CoeffApprox(Value z) : z_(z), y1_(z), y2_(z), y3_(z) {}

  static CoeffApprox zero() { return {}; }
  static CoeffApprox one() { return from_int(1); }
  static CoeffApprox imag_unit() { return from_int(0, 1); }
  static CoeffApprox from_int(long re, long im = 0) {
    return CoeffApprox(Value(static_cast<long double>(re), static_cast<long double>(im)));
  }
  static CoeffApprox from_rational(long num, long den) {
    return CoeffApprox(Value(static_cast<long double>(num) / static_cast<long double>(den), 0.0L));
  }

  std::complex<double> value() const { return {static_cast<double>(z_.real()), static_cast<double>(z_.imag())}; }
  const Value& working_value() const { return z_; }
  double err() const {
    return static_cast<double>(kSpreadFactor * std::max({std::abs(z_ - y1_), std::abs(z_ - y2_), std::abs(z_ - y3_)}));
  }
  bool reliable() const {
    long double m = std::abs(z_);
    long double e = kSpreadFactor * std::max({std::abs(z_ - y1_), std::abs(z_ - y2_), std::abs(z_ - y3_)});
    long double tol = approx_config().zero_tol;
    return m + e < tol || m - e >= tol;
  }

  bool is_zero() const { return std::abs(z_) < static_cast<long double>(approx_config().zero_tol); }
  bool is_one() const { return (*this - one()).is_zero(); }

  friend CoeffApprox operator+(const CoeffApprox& a, const CoeffApprox& b) {
    return make(a.z_ + b.z_, a.y1_ + b.y1_, a.y2_ + b.y2_, a.y3_ + b.y3_);
  }
  friend CoeffApprox operator-(const CoeffApprox& a, const CoeffApprox& b) {
    return make(a.z_ - b.z_, a.y1_ - b.y1_, a.y2_ - b.y2_, a.y3_ - b.y3_);
  }
  friend CoeffApprox operator*(const CoeffApprox& a, const CoeffApprox& b) {
    return make(mul(a.z_, b.z_), mul(a.y1_, b.y1_), mul(a.y2_, b.y2_), mul(a.y3_, b.y3_));
  }
  friend CoeffApprox operator/(const CoeffApprox& a, const CoeffApprox& b) {
    if (b.is_zero()) raise(ErrorCode::DivisionByZero, "approx coefficient below zero tolerance");
    return make(a.z_ / b.z_, a.y1_ / b.y1_, a.y2_ / b.y2_, a.y3_ / b.y3_);
  }
  CoeffApprox operator-() const {
    CoeffApprox r;
    r.z_ = -z_;
    r.y1_ = -y1_;
    r.y2_ = -y2_;
    r.y3_ = -y3_;
    return r;
  }
  CoeffApprox& operator+=(const CoeffApprox& b) { return *this = *this + b; }
  CoeffApprox& operator-=(const CoeffApprox& b) { return *this = *this - b; }
  CoeffApprox& operator*=(const CoeffApprox& b) { return *this = *this * b; }

  /// Tolerance equality: the difference passes the zero test.
  friend bool operator==(const CoeffApprox& a, const CoeffApprox& b) { return (a - b).is_zero(); }

  std::complex<double> to_complex() const { return value(); }

 private:
  friend CoeffApprox csqrt(const CoeffApprox& a);

  // Plain product; the library routine's inf/nan recovery costs a call per multiply.
  static Value mul(const Value& a, const Value& b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
  }

  static CoeffApprox make(Value z, Value y1, Value y2, Value y3) {
    CoeffApprox r;
    r.z_ = z;
    r.y1_ = detail::perturb(y1);
    r.y2_ = detail::perturb(y2);
    r.y3_ = detail::perturb(y3);
    return r;
  }

  Value z_{0.0L, 0.0L};
  Value y1_{0.0L, 0.0L};
  Value y2_{0.0L, 0.0L};
  Value y3_{0.0L, 0.0L};
};

/// Principal branch unless approx_config().flip_sqrt_branch is set. Always succeeds.
CoeffApprox csqrt(const CoeffApprox& a);


template <class C>
concept Coefficient = std::copyable<C> && std::default_initializable<C> &&
    requires(const C a, const C b, long p, long q) {
      { a + b } -> std::same_as<C>;
      { a - b } -> std::same_as<C>;
      { a * b } -> std::same_as<C>;
      { a / b } -> std::same_as<C>;
      { -a } -> std::same_as<C>;
      { a.is_zero() } -> std::convertible_to<bool>;
      { a.is_one() } -> std::convertible_to<bool>;
      { a.to_complex() } -> std::same_as<std::complex<double>>;
      { C::zero() } -> std::same_as<C>;
      { C::one() } -> std::same_as<C>;
      { C::imag_unit() } -> std::same_as<C>;
      { C::from_int(p, q) } -> std::same_as<C>;
      { C::from_rational(p, q) } -> std::same_as<C>;
      { csqrt(a) } -> std::same_as<C>;
      { C::is_exact } -> std::convertible_to<bool>;
    };

std::string to_string(const CoeffExact& a);
std::string to_string(const CoeffApprox& a);

/// Parses "3", "-1/2", "i", "-2i", "3/4*i", "(1+2i)", "1.5" (approx only), ...
CoeffExact parse_exact_coeff(const std::string& text);
CoeffApprox parse_approx_coeff(const std::string& text);

template <Coefficient C>
C parse_coeff(const std::string& text) {
  if constexpr (C::is_exact) {
    return parse_exact_coeff(text);
  } else {
    return parse_approx_coeff(text);
  }
}

}  // namespace affflag
