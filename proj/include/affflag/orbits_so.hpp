#pragma once

// Orbits of SO_n(F) on SL_n(F)/B: the forms h_w, h_w^+ and h_w^-, the
// representatives g_w, g_w^+-, and reduction of g^T g by det-1 Iwahori congruence.

#include <string>
#include <vector>

#include "affflag/elimination.hpp"
#include "affflag/orbits_on.hpp"

namespace affflag {

template <Coefficient C>
struct CanonicalSO {
  AffinePermutation w;
  Sign sign = Sign::None;
  DecoratedMonomial<C> form;
};

template <Coefficient C>
struct ReductionSO {
  CanonicalSO<C> canon;
  SeriesMatrix<C> witness;
  std::vector<ReductionStep<C>> steps;
};

namespace detail {

inline void require_affine_twisted_involution(const AffinePermutation& w) {
  if (!w.is_twisted_involution() || w.shift_sum() != 0) {
    raise(ErrorCode::NotAffineTwistedInvolution, to_string(w) + " is not an affine twisted involution with shift sum 0");
  }
}

}  // namespace detail

/// h_w: the matrix of w with every off-diagonal entry multiplied by i.
template <Coefficient C>
DecoratedMonomial<C> build_hw(const AffinePermutation& w) {
  detail::require_affine_twisted_involution(w);
  DecoratedMonomial<C> d = DecoratedMonomial<C>::pure(w);
  for (int j = 0; j < w.n(); ++j)
    if (w.bar(j) != j) d.units[static_cast<std::size_t>(j)] = C::imag_unit();
  return d;
}

/// h_w^+ = h_w, h_w^- = d h_w d with d = diag(-1, 1, ..., 1). Fixed-point-free w only.
template <Coefficient C>
DecoratedMonomial<C> build_hw_pm(const AffinePermutation& w, Sign sign) {
  detail::require_affine_twisted_involution(w);
  if (!w.bar.fixed_points().empty()) raise(ErrorCode::HasFixedPoint, to_string(w) + " has a fixed point");
  if (sign == Sign::None) raise(ErrorCode::SignRequired, "fixed-point-free w needs sign + or -");
  DecoratedMonomial<C> d = build_hw<C>(w);
  if (sign == Sign::Minus) {
    d.units[0] = -d.units[0];
    auto k = static_cast<std::size_t>(w.bar(0));
    d.units[k] = -d.units[k];
  }
  return d;
}

/// h_w when w has a fixed point, else h_w^{sign}.
template <Coefficient C>
DecoratedMonomial<C> build_h_so(const AffinePermutation& w, Sign sign) {
  if (w.bar.fixed_points().empty()) return build_hw_pm<C>(w, sign);
  if (sign != Sign::None) raise(ErrorCode::HasFixedPoint, to_string(w) + " has a fixed point; sign must be none");
  return build_hw<C>(w);
}

/// g in SL_n(F) with g^T g = h_w (or h_w^{sign}).
template <Coefficient C>
SeriesMatrix<C> build_gw_SOn(const AffinePermutation& w, Sign sign) {
  using S = LaurentSeries<C>;
  detail::require_affine_twisted_involution(w);
  bool fpf = w.bar.fixed_points().empty();
  if (!fpf && sign != Sign::None) raise(ErrorCode::HasFixedPoint, to_string(w) + " has a fixed point; sign must be none");
  if (fpf && sign == Sign::None) raise(ErrorCode::SignRequired, "fixed-point-free w needs sign + or -");

  int n = w.n();
  SeriesMatrix<C> g(n);
  S s = (S::t_pow(1) - S::one()).sqrt();
  C i = C::imag_unit();
  C half = C::one() / C::from_int(2);
  std::vector<int> odd;
  for (int j = 0; j < n; ++j) {
    long c = w.shifts[static_cast<std::size_t>(j)];
    int k = w.bar(j);
    if (k == j) {
      if (c % 2 == 0) {
        g(j, j) = S::t_pow(c / 2);
      } else {
        odd.push_back(j);
      }
    } else if (j < k) {
      if (j == 0 && sign == Sign::Minus) {
        g(j, j) = S::constant(i);
        g(j, k) = S::monomial(-half, c);
        g(k, j) = S::one();
        g(k, k) = S::monomial(-(i * half), c);
      } else {
        g(j, j) = S::monomial(half, c);
        g(j, k) = S::constant(i);
        g(k, j) = S::monomial(i * half, c);
        g(k, k) = S::one();
      }
    }
  }
  for (std::size_t q = 0; q + 1 < odd.size(); q += 2) {
    int x = odd[q];
    int y = odd[q + 1];
    long ea = (w.shifts[static_cast<std::size_t>(x)] - 1) / 2;
    long eb = (w.shifts[static_cast<std::size_t>(y)] - 1) / 2;
    g(x, x) = S::t_pow(ea);
    g(x, y) = -s.shifted(eb);
    g(y, x) = s.shifted(ea);
    g(y, y) = S::t_pow(eb);
  }
  return g;
}

/// Brings a symmetric h with det 1 to h_w or h_w^+- by congruence with det-1 Iwahori elements.
template <Coefficient C>
ReductionSO<C> reduce_symmetric_sl(const SeriesMatrix<C>& h, bool keep_log = true) {
  using S = LaurentSeries<C>;
  if (!h.member(MatrixClass::Symmetric)) raise(ErrorCode::NotSymmetric, "h is not symmetric to precision");
  if (!(h.det() - S::one()).is_zero()) raise(ErrorCode::DetNotOne, "det(h) is not 1 to precision");

  CongruenceState<C> st(h, keep_log, Structure::Symmetric);
  auto blocks = eliminate(st, false);
  int n = h.n();
  const C i = C::imag_unit();
  auto unit_at = [&](int r, int c) { return detail::unit_part(st.current()(r, c)); };
  auto diag_scale = [&](int a, const S& fa, int b, const S& fb) {
    std::vector<S> d(static_cast<std::size_t>(n), S::one());
    d[static_cast<std::size_t>(a)] = fa;
    d[static_cast<std::size_t>(b)] = fb;
    st.scale(d);
  };

  std::vector<int> diagonals;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& b : blocks) {
    if (b.i == b.j) {
      diagonals.push_back(b.i);
    } else {
      pairs.emplace_back(b.j, b.i);
    }
  }
  std::sort(diagonals.begin(), diagonals.end());
  std::sort(pairs.begin(), pairs.end());

  Sign sign = Sign::None;
  if (!diagonals.empty()) {
    int l = diagonals.front();
    for (auto [j, k] : pairs) {
      S c = unit_at(j, k);
      diag_scale(j, S::constant(i) * c.inv(), l, -(S::constant(i) * c));
    }
    int last = diagonals.back();
    for (int j : diagonals) {
      if (j == last) continue;
      S root = unit_at(j, j).sqrt();
      diag_scale(j, root.inv(), last, root);
    }
    if (!(unit_at(last, last) - S::one()).is_zero()) {
      raise(ErrorCode::DetNotOne, "last diagonal unit is " + to_string(unit_at(last, last)) + ", expected 1");
    }
  } else {
    for (auto [j, k] : pairs) {
      if (j == 0) continue;
      S c = unit_at(j, k);
      diag_scale(j, S::constant(i) * c.inv(), 0, -(S::constant(i) * c));
    }
    int k0 = -1;
    for (auto [j, k] : pairs)
      if (j == 0) k0 = k;
    S c0 = unit_at(0, k0);
    if ((c0 - S::constant(i)).is_zero()) {
      sign = Sign::Plus;
    } else if ((c0 + S::constant(i)).is_zero()) {
      sign = Sign::Minus;
    } else {
      raise(ErrorCode::DetNotOne, "first-row unit is " + to_string(c0) + ", expected i or -i");
    }
  }

  std::vector<int> img(static_cast<std::size_t>(n));
  std::vector<long> exps(static_cast<std::size_t>(n));
  for (const auto& b : blocks) {
    long e = st.current()(b.i, b.j).ord();
    img[static_cast<std::size_t>(b.i)] = b.j;
    img[static_cast<std::size_t>(b.j)] = b.i;
    exps[static_cast<std::size_t>(b.i)] = e;
    exps[static_cast<std::size_t>(b.j)] = e;
  }
  AffinePermutation w{Permutation(img), exps};
  DecoratedMonomial<C> form = build_h_so<C>(w, sign);
  return {{w, sign, form}, st.witness(), st.take_steps()};
}

template <Coefficient C>
ReductionSO<C> classify_SOn(const SeriesMatrix<C>& g, bool keep_log = true) {
  if (!(g.det() - LaurentSeries<C>::one()).is_zero()) raise(ErrorCode::DetNotOne, "det(g) is not 1 to precision");
  return reduce_symmetric_sl(gram(g), keep_log);
}

}  // namespace affflag
