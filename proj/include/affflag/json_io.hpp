#pragma once

// JSON encodings of scalars, series, matrices and affine permutations.
//   scalar  exact {"re": "p/q", "im": "r/s"}, approx {"re": x, "im": y}
//   series  {"val": v, "coeffs": [scalar, ...], "prec": p}, or a shorthand string "t^-2 + 3*t"
//   matrix  {"n": n, "entries": [[series, ...], ...]} row-major
//   w       {"w": "(2 4) ; 4,-2,-5,-2,3", "bar": [...], "shifts": [...]}

#include <json.hpp>

#include "affflag/affperm.hpp"
#include "affflag/enumerate.hpp"

namespace affflag::json {

using nlohmann::json;

template <Coefficient C>
json encode(const C& c) {
  if constexpr (C::is_exact) {
    return {{"re", c.re().get_str()}, {"im", c.im().get_str()}};
  } else {
    return {{"re", c.value().real()}, {"im", c.value().imag()}};
  }
}

template <Coefficient C>
C decode_scalar(const json& j) {
  if (j.is_string()) return parse_coeff<C>(j.get<std::string>());
  if (j.is_number_integer()) return C::from_int(j.get<long>());
  if (j.is_number()) {
    if constexpr (C::is_exact) {
      return parse_coeff<C>(j.dump());
    } else {
      return CoeffApprox(std::complex<double>(j.get<double>(), 0.0));
    }
  }
  if (!j.is_object() || !j.contains("re")) raise(ErrorCode::ParseError, "scalar must be {\"re\", \"im\"}: " + j.dump());
  auto part = [](const json& x) -> std::string {
    if (x.is_string()) return x.get<std::string>();
    return x.dump();
  };
  C re = parse_coeff<C>(part(j.at("re")));
  C im = j.contains("im") ? parse_coeff<C>(part(j.at("im"))) : C::zero();
  return re + C::imag_unit() * im;
}

template <Coefficient C>
json encode(const LaurentSeries<C>& f) {
  json cs = json::array();
  for (const C& c : f.coeffs()) cs.push_back(encode(c));
  return {{"val", f.val()}, {"coeffs", cs}, {"prec", f.prec()}};
}

template <Coefficient C>
LaurentSeries<C> decode_series(const json& j, int terms = default_terms()) {
  if (j.is_string()) return parse_series<C>(j.get<std::string>(), terms);
  if (j.is_number()) return LaurentSeries<C>::constant(decode_scalar<C>(j), terms);
  if (!j.is_object() || !j.contains("val") || !j.contains("coeffs")) {
    raise(ErrorCode::ParseError, "series must be {\"val\", \"coeffs\", \"prec\"} or a string: " + j.dump());
  }
  long val = j.at("val").get<long>();
  std::vector<C> cs;
  for (const auto& x : j.at("coeffs")) cs.push_back(decode_scalar<C>(x));
  if (j.contains("prec")) {
    long prec = j.at("prec").get<long>();
    if (prec < val + static_cast<long>(cs.size())) raise(ErrorCode::ParseError, "prec is below val + len(coeffs)");
    if (cs.empty() && prec >= kExactPrec) return LaurentSeries<C>();
    cs.resize(static_cast<std::size_t>(prec - val), C::zero());
  }
  return LaurentSeries<C>(val, std::move(cs));
}

template <Coefficient C>
json encode(const SeriesMatrix<C>& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(row);
  }
  return {{"n", m.n()}, {"entries", rows}};
}

template <Coefficient C>
SeriesMatrix<C> decode_matrix(const json& j, int terms = default_terms()) {
  const json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array()) raise(ErrorCode::ParseError, "matrix entries must be an array of rows");
  int n = static_cast<int>(rows.size());
  if (j.is_object() && j.contains("n") && j.at("n").get<int>() != n) raise(ErrorCode::DimensionMismatch, "n disagrees with entries");
  SeriesMatrix<C> m(n);
  for (int i = 0; i < n; ++i) {
    if (!rows[static_cast<std::size_t>(i)].is_array() || static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      raise(ErrorCode::DimensionMismatch, "row " + std::to_string(i + 1) + " does not have n entries");
    }
    for (int k = 0; k < n; ++k) m(i, k) = decode_series<C>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], terms);
  }
  return m;
}

inline json encode(const AffinePermutation& w) {
  std::vector<int> bar;
  for (int x : w.bar.images()) bar.push_back(x + 1);
  return {{"w", to_string(w)}, {"bar", bar}, {"shifts", w.shifts}};
}

inline AffinePermutation decode_affine(const json& j) {
  if (j.is_string()) return parse_affine_permutation(j.get<std::string>());
  if (j.contains("w")) return parse_affine_permutation(j.at("w").get<std::string>());
  std::vector<int> bar;
  for (int x : j.at("bar").get<std::vector<int>>()) bar.push_back(x - 1);
  return {Permutation(bar), j.at("shifts").get<std::vector<long>>()};
}

template <Coefficient C>
json encode(const DecoratedMonomial<C>& d) {
  json units = json::array();
  for (const C& u : d.units) units.push_back(encode(u));
  json out = encode(d.affine());
  out["units"] = units;
  return out;
}

}  // namespace affflag::json
