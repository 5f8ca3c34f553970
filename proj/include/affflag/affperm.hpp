#pragma once

// Extended affine symmetric group and decorated monomial matrices.
//
// Permutations are stored 0-based; text forms ("(2 4)", window notation) are 1-based.

#include <set>
#include <string>
#include <vector>

#include "affflag/linalg.hpp"

namespace affflag {

class Permutation {
 public:
  Permutation() = default;
  /// One-line form, 0-based images. Raises ParseError if not a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Product of disjoint or overlapping 1-based cycles, composed right to left.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  /// Transposition of 0-based points a and b.
  static Permutation transposition(int n, int a, int b);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  bool is_involution() const;
  bool is_identity() const;
  std::vector<int> fixed_points() const;
  /// Non-trivial cycles, each starting at its least point, ordered by that point. 0-based.
  std::vector<std::vector<int>> cycles() const;
  /// +1 or -1.
  int sign() const;

  /// (p * q)(i) = p(q(i)).
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_;
};

/// "(1 2 3)(4 6)", or "()" for the identity.
std::string to_string(const Permutation& p);

/// The affine permutation bar * tau^shifts; as a map on Z, w(i) = bar(i) + n * shifts_i
/// for 1 <= i <= n. Its matrix has t^{shifts_i} at (bar(i), i).
struct AffinePermutation {
  Permutation bar;
  std::vector<long> shifts;

  static AffinePermutation identity(int n);
  int n() const { return bar.n(); }

  AffinePermutation inverse() const;
  /// bar * tau^{-shifts}.
  AffinePermutation star() const;
  /// Window notation [w(1), ..., w(n)], 1-based.
  std::vector<long> window() const;
  /// w applied to any integer, 1-based.
  long apply(long i) const;
  long shift_sum() const;
  /// w* = w^{-1}; equivalently bar is an involution with shifts constant on its cycles.
  bool is_twisted_involution() const;

  friend AffinePermutation operator*(const AffinePermutation& x, const AffinePermutation& y);
  friend bool operator==(const AffinePermutation&, const AffinePermutation&) = default;
  friend auto operator<=>(const AffinePermutation&, const AffinePermutation&) = default;
};

/// "(2 4) ; 4,-2,-5,-2,3".
std::string to_string(const AffinePermutation& w);

/// Parses "CYCLES ; SHIFTS". The dimension is the length of the shift list.
AffinePermutation parse_affine_permutation(const std::string& text);

/// Monomial matrix: units[j] * t^exps[j] at (perm(j), j).
template <Coefficient C>
struct DecoratedMonomial {
  Permutation perm;
  std::vector<long> exps;
  std::vector<C> units;

  int n() const { return perm.n(); }

  static DecoratedMonomial pure(const AffinePermutation& w) {
    return {w.bar, w.shifts, std::vector<C>(static_cast<std::size_t>(w.n()), C::one())};
  }

  AffinePermutation affine() const { return {perm, exps}; }

  bool is_pure() const {
    for (const auto& u : units)
      if (!u.is_one()) return false;
    return true;
  }

  SeriesMatrix<C> to_matrix(int terms = default_terms()) const {
    SeriesMatrix<C> m(n());
    for (int j = 0; j < n(); ++j) {
      m(perm(j), j) = LaurentSeries<C>::monomial(units[static_cast<std::size_t>(j)], exps[static_cast<std::size_t>(j)], terms);
    }
    return m;
  }

  /// Reads off a monomial matrix whose non-zero entries are single terms c t^k.
  static DecoratedMonomial from_matrix(const SeriesMatrix<C>& m) {
    if (!m.member(MatrixClass::Monomial)) raise(ErrorCode::NotMonomial, "not one non-zero entry per row and column");
    int n = m.n();
    std::vector<int> img(static_cast<std::size_t>(n));
    DecoratedMonomial d;
    d.exps.resize(static_cast<std::size_t>(n));
    d.units.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const auto& x = m(i, j);
        if (x.is_zero()) continue;
        for (std::size_t k = 1; k < x.coeffs().size(); ++k) {
          if (!x.coeffs()[k].is_zero()) {
            raise(ErrorCode::NotMonomial,
                  "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not a single term");
          }
        }
        img[static_cast<std::size_t>(j)] = i;
        d.exps[static_cast<std::size_t>(j)] = x.val();
        d.units[static_cast<std::size_t>(j)] = x.lead();
      }
    }
    d.perm = Permutation(img);
    return d;
  }

  friend bool operator==(const DecoratedMonomial& a, const DecoratedMonomial& b) {
    if (a.perm != b.perm || a.exps != b.exps) return false;
    for (std::size_t j = 0; j < a.units.size(); ++j)
      if (!(a.units[j] == b.units[j])) return false;
    return true;
  }
};

template <Coefficient C>
SeriesMatrix<C> to_matrix(const AffinePermutation& w, int terms = default_terms()) {
  return DecoratedMonomial<C>::pure(w).to_matrix(terms);
}

/// Decoration of a fixed-point-free special orthogonal orbit.
enum class Sign { None, Plus, Minus };

inline std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::None: return "none";
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
  }
  return "none";
}

inline Sign parse_sign(const std::string& text) {
  if (text == "+" || text == "plus") return Sign::Plus;
  if (text == "-" || text == "minus") return Sign::Minus;
  if (text.empty() || text == "none") return Sign::None;
  raise(ErrorCode::ParseError, "sign must be '+', '-' or 'none', got '" + text + "'");
}

enum class ApmClass { SymAPM, eSymAPM, iSymAPM_case_i, iSymAPM_case_ii, SkewAPM, AffineWeyl, FixedPointFree };

std::string_view to_string(ApmClass c);

namespace detail {

inline bool symmetric_support(const Permutation& p, const std::vector<long>& exps) {
  if (!p.is_involution()) return false;
  for (int j = 0; j < p.n(); ++j)
    if (exps[static_cast<std::size_t>(j)] != exps[static_cast<std::size_t>(p(j))]) return false;
  return true;
}

inline long sum(const std::vector<long>& v) {
  long s = 0;
  for (long x : v) s += x;
  return s;
}

}  // namespace detail

/// Every indexing-set predicate the matrix satisfies.
template <Coefficient C>
std::set<ApmClass> classify_membership(const DecoratedMonomial<C>& m) {
  std::set<ApmClass> out;
  int n = m.n();
  const Permutation& p = m.perm;
  bool sym = detail::symmetric_support(p, m.exps);
  bool pure = m.is_pure();
  long total = detail::sum(m.exps);
  bool fpf = p.fixed_points().empty();
  C i = C::imag_unit();
  auto unit = [&](int j) -> const C& { return m.units[static_cast<std::size_t>(j)]; };

  if (sym && pure) {
    out.insert(ApmClass::SymAPM);
    if (total % 2 == 0) out.insert(ApmClass::eSymAPM);
    if (fpf) out.insert(ApmClass::FixedPointFree);
  }
  if (pure && total == 0) out.insert(ApmClass::AffineWeyl);

  if (sym && total == 0) {
    if (!fpf) {
      bool ok = true;
      for (int j = 0; j < n; ++j) ok = ok && (p(j) == j ? unit(j).is_one() : unit(j) == i);
      if (ok) out.insert(ApmClass::iSymAPM_case_i);
    } else {
      bool ok = unit(0) == unit(p(0)) && (unit(0) == i || unit(0) == -i);
      for (int j = 0; j < n; ++j)
        if (j != 0 && p(j) != 0) ok = ok && unit(j) == i;
      if (ok) out.insert(ApmClass::iSymAPM_case_ii);
    }
  }

  if (sym && fpf) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && (p(j) < j ? unit(j).is_one() : (-unit(j)).is_one());
    if (ok) out.insert(ApmClass::SkewAPM);
  }
  return out;
}

}  // namespace affflag
