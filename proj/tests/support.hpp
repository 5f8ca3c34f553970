#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include <doctest.h>

#include "affflag/enumerate.hpp"
#include "affflag/orbits_on.hpp"
#include "affflag/orbits_so.hpp"
#include "affflag/orbits_sp.hpp"

namespace testing {

using namespace affflag;

/// Code of the Error thrown by f, or nothing if f returns normally.
inline std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

template <Coefficient C>
LaurentSeries<C> ser(const std::string& text) {
  return parse_series<C>(text);
}

template <Coefficient C>
SeriesMatrix<C> mat(int n, std::initializer_list<const char*> entries) {
  std::vector<LaurentSeries<C>> e;
  for (const char* s : entries) e.push_back(std::string(s) == "0" ? LaurentSeries<C>() : ser<C>(s));
  return SeriesMatrix<C>(n, std::move(e));
}

/// (t - 1)^{1/2} with leading coefficient i.
template <Coefficient C>
LaurentSeries<C> root_t_minus_one() {
  using S = LaurentSeries<C>;
  return (S::t_pow(1) - S::one()).sqrt();
}

/// Matrices that agree to precision, with a readable failure message.
template <Coefficient C>
void check_same(const SeriesMatrix<C>& x, const SeriesMatrix<C>& y) {
  INFO("lhs:\n" << to_string(x) << "rhs:\n" << to_string(y));
  CHECK(x == y);
}

/// Identity check at the verification tolerance: exact equality in exact mode,
/// residual <= 1e-8 in approx mode (random inputs carry large coefficients).
template <Coefficient C>
void check_verified(const SeriesMatrix<C>& x, const SeriesMatrix<C>& y) {
  INFO("lhs:\n" << to_string(x) << "rhs:\n" << to_string(y));
  if constexpr (C::is_exact) {
    CHECK(x == y);
  } else {
    CHECK(residual(SeriesMatrix<C>(x - y)) <= 1e-8);
  }
}

inline AffinePermutation apm(const std::string& text) { return parse_affine_permutation(text); }

}  // namespace testing
