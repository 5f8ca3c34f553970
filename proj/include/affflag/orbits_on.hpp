#pragma once

// Orbits of O_n(F) on GL_n(F)/B: reduction of h = g^T g to its eSymAPM form,
// square roots of symmetric matrices, and the representatives g_w.

#include <algorithm>
#include <string>
#include <vector>

#include "affflag/elimination.hpp"

namespace affflag {

template <Coefficient C>
struct ReductionResult {
  DecoratedMonomial<C> canon;
  SeriesMatrix<C> witness;
  std::vector<ReductionStep<C>> steps;
};

// ---------------------------------------------------------------------------
// 2x2 case table

template <Coefficient C>
struct Reduced2x2 {
  SeriesMatrix<C> canon;  // diag(t^m, t^m') or antidiag(t^k, t^k)
  SeriesMatrix<C> b;      // b^T [[a, c], [c, d]] b = canon
  int row = 0;            // which of the twelve cases applied
  bool antidiagonal = false;
};

namespace detail {

template <Coefficient C>
class TwoByTwo {
 public:
  using S = LaurentSeries<C>;
  using M = SeriesMatrix<C>;

  TwoByTwo(const S& a, const S& c, const S& d) : m_(2), b_(M::identity(2)) {
    m_(0, 0) = a;
    m_(0, 1) = c;
    m_(1, 0) = c;
    m_(1, 1) = d;
  }

  const S& a() const { return m_(0, 0); }
  const S& c() const { return m_(1, 0); }
  const S& d() const { return m_(1, 1); }

  enum class Entry { Diag0, Off, Diag1 };

  void apply(const M& op) {
    m_ = congruence(op, m_);
    b_ = b_ * op;
  }
  void scale(const S& alpha, const S& beta) { apply(M::diagonal({alpha, beta})); }
  /// [[1, p], [0, 1]]; `cleared` vanishes by the choice of p and is stored as exact zero.
  void upper(const S& p, Entry cleared) {
    apply(M::elementary(2, 0, 1, p));
    clear(cleared);
  }
  /// [[1, 0], [q, 1]]
  void lower(const S& q, Entry cleared) {
    apply(M::elementary(2, 1, 0, q));
    clear(cleared);
  }

  // Makes the non-zero diagonal entries exact powers of t.
  void normalize_diagonal() {
    S one = S::one();
    S alpha = a().is_zero() ? one : unit_part(a()).sqrt().inv();
    S beta = d().is_zero() ? one : unit_part(d()).sqrt().inv();
    scale(alpha, beta);
  }
  // Makes the off-diagonal pair an exact power of t.
  void normalize_antidiagonal() { scale(S::one(), unit_part(c()).inv()); }

  Reduced2x2<C> finish(int row) {
    bool anti = !c().is_zero();
    if (anti) {
      normalize_antidiagonal();
    } else {
      normalize_diagonal();
    }
    M canon(2);
    if (anti) {
      canon(0, 1) = S::t_pow(c().ord());
      canon(1, 0) = S::t_pow(c().ord());
    } else {
      canon(0, 0) = S::t_pow(a().ord());
      canon(1, 1) = S::t_pow(d().ord());
    }
    return {canon, b_, row, anti};
  }

 private:
  void clear(Entry e) {
    switch (e) {
      case Entry::Diag0: m_(0, 0) = S(); break;
      case Entry::Diag1: m_(1, 1) = S(); break;
      case Entry::Off:
        m_(0, 1) = S();
        m_(1, 0) = S();
        break;
    }
  }

  M m_;
  M b_;
};

}  // namespace detail

/// Brings [[a, c], [c, d]] to a diagonal or antidiagonal power of t by congruence
/// with b in B_2, following the twelve cases (by ord a = m1, ord c = k, ord d = m2).
template <Coefficient C>
Reduced2x2<C> reduce_2x2(const LaurentSeries<C>& a, const LaurentSeries<C>& c, const LaurentSeries<C>& d) {
  using S = LaurentSeries<C>;
  detail::TwoByTwo<C> s(a, c, d);
  using E = typename detail::TwoByTwo<C>::Entry;
  S one = S::one();
  S two = S::constant(C::from_int(2));

  // d = 0: clear a against c, or c against a.
  auto d_zero = [&](int row_ge, int row_lt) {
    if (s.c().ord() >= s.a().ord()) {
      s.upper(-(s.c() * s.a().inv()), E::Off);
      return s.finish(row_ge);
    }
    s.lower(-(s.a() * (two * s.c()).inv()), E::Diag0);
    return s.finish(row_lt);
  };
  // a = 0: clear d against c, or c against d.
  auto a_zero = [&](int row_gt, int row_le) {
    if (s.c().ord() > s.d().ord()) {
      s.lower(-(s.c() * s.d().inv()), E::Off);
      return s.finish(row_gt);
    }
    s.upper(-(s.d() * (two * s.c()).inv()), E::Diag1);
    return s.finish(row_le);
  };
  // Root of 1 - a d / c^2 with leading coefficient 1.
  auto ratio_root = [&]() {
    return detail::with_positive_lead((one - s.a() * s.d() * (s.c() * s.c()).inv()).sqrt());
  };

  if (c.is_zero()) {
    if (a.is_zero() || d.is_zero()) raise(ErrorCode::NotInvertible, "2x2 block is singular");
    return s.finish(1);
  }
  if (a.is_zero() && d.is_zero()) return s.finish(2);
  if (d.is_zero()) return d_zero(3, 4);
  if (a.is_zero()) return a_zero(5, 6);

  long m1 = a.ord();
  long m2 = d.ord();
  long k = c.ord();
  if (k >= m1 && m1 >= m2) {
    s.upper(-(c * a.inv()), E::Off);
    return s.finish(7);
  }
  if (m1 >= m2 && m2 >= k) {
    // p solves a p^2 + 2 c p + d = 0 with ord p = m2 - k >= 0; then delta = c + p a.
    s.upper(-(d * (c * (one + ratio_root())).inv()), E::Diag1);
    return d_zero(8, 8);
  }
  if (m1 > k && k > m2) {
    s.lower(-(c * d.inv()), E::Off);
    return s.finish(9);
  }
  if (m1 < m2 && m2 <= k) {
    s.upper(-(c * a.inv()), E::Off);
    return s.finish(10);
  }
  if (k < m1 && m1 < m2) {
    // q solves d q^2 + 2 c q + a = 0 with ord q = m1 - k >= 1.
    s.lower(-(a * (c * (one + ratio_root())).inv()), E::Diag0);
    return a_zero(11, 11);
  }
  // m1 <= k < m2
  s.upper(-(c * a.inv()), E::Off);
  return s.finish(12);
}

// ---------------------------------------------------------------------------
// General n

/// Brings a symmetric h to its SymAPM form by B-congruence. The witness b satisfies
/// b^T h b = to_matrix(canon).
template <Coefficient C>
ReductionResult<C> reduce_symmetric(const SeriesMatrix<C>& h, bool keep_log = true) {
  using S = LaurentSeries<C>;
  if (!h.member(MatrixClass::Symmetric)) raise(ErrorCode::NotSymmetric, "h is not symmetric to precision");
  CongruenceState<C> st(h, keep_log, Structure::Symmetric);
  auto blocks = eliminate(st, false);

  int n = h.n();
  std::vector<S> s(static_cast<std::size_t>(n), S::one());
  std::vector<int> img(static_cast<std::size_t>(n));
  std::vector<long> exps(static_cast<std::size_t>(n));
  for (const auto& b : blocks) {
    const S& e = st.current()(b.i, b.j);
    S u = detail::unit_part(e);
    if (b.i == b.j) {
      s[static_cast<std::size_t>(b.i)] = u.sqrt().inv();
    } else {
      s[static_cast<std::size_t>(b.i)] = u.inv();
    }
    img[static_cast<std::size_t>(b.i)] = b.j;
    img[static_cast<std::size_t>(b.j)] = b.i;
    exps[static_cast<std::size_t>(b.i)] = e.ord();
    exps[static_cast<std::size_t>(b.j)] = e.ord();
  }
  st.scale(s);
  DecoratedMonomial<C> canon{Permutation(img), exps, std::vector<C>(static_cast<std::size_t>(n), C::one())};
  return {canon, st.witness(), st.take_steps()};
}

/// Squares in F are exactly the elements of even ord.
template <Coefficient C>
bool det_is_square(const SeriesMatrix<C>& h) {
  LaurentSeries<C> d;
  try {
    d = h.det();
  } catch (const Error& e) {
    raise(ErrorCode::NotInvertible, e.what());
  }
  if (d.is_zero()) raise(ErrorCode::NotInvertible, "determinant vanishes to precision");
  return d.ord() % 2 == 0;
}

template <Coefficient C>
struct CharsymForm {
  SeriesMatrix<C> p;      // p^T h p = form
  SeriesMatrix<C> p_inv;
  SeriesMatrix<C> form;   // symmetric monomial: 1 off the diagonal, 1 or t on it
};

/// General (not Iwahori) congruence to a symmetric permutation pattern with 1's,
/// and 1 or t on the diagonal.
template <Coefficient C>
CharsymForm<C> charsym1_reduce(const SeriesMatrix<C>& h) {
  using S = LaurentSeries<C>;
  using M = SeriesMatrix<C>;
  if (!h.member(MatrixClass::Symmetric)) raise(ErrorCode::NotSymmetric, "h is not symmetric to precision");
  int n = h.n();
  CongruenceState<C> st(h, false, Structure::Symmetric);
  M pinv = M::identity(n);
  M form(n);

  // p^{-1} picks up the inverse factors on the left.
  auto unipotent = [&](const std::vector<std::tuple<int, int, S>>& ops) {
    st.unipotent(ops, "eliminate");
    for (const auto& [p, k, x] : ops) {
      if (x.is_exact_zero()) continue;
      for (int c = 0; c < n; ++c) pinv(p, c) -= x * pinv(k, c);
    }
  };
  auto scale_one = [&](int i, const S& f) {
    st.scale_one(i, f);
    S finv = f.inv();
    for (int c = 0; c < n; ++c) pinv(i, c) = finv * pinv(i, c);
  };

  std::vector<int> active;
  for (int k = 0; k < n; ++k) active.push_back(k);
  while (!active.empty()) {
    int r = active.front();
    int j = -1;
    for (int row : active) {
      if (!st.current()(row, r).is_zero()) {
        j = row;
        break;
      }
    }
    if (j < 0) raise(ErrorCode::NotInvertible, "column " + std::to_string(r + 1) + " vanishes");
    std::vector<std::tuple<int, int, S>> ops;
    if (j == r) {
      S inv = st.current()(r, r).inv();
      for (int k : active)
        if (k != r) ops.emplace_back(r, k, -(st.current()(r, k) * inv));
      unipotent(ops);
      const S& e = st.current()(r, r);
      long b = e.ord();
      long half = b >= 0 ? b / 2 : -((-b + 1) / 2);
      scale_one(r, detail::unit_part(e).sqrt().inv().shifted(-half));
      form(r, r) = S::t_pow(b - 2 * half);
      std::erase(active, r);
    } else {
      // Block {r, j} = [[0, a], [a, c]].
      S a = st.current()(j, r);
      S c = st.current()(j, j);
      S ainv = a.inv();
      for (int k : active) {
        if (k == r || k == j) continue;
        const S& hr = st.current()(r, k);
        const S& hj = st.current()(j, k);
        // M^{-1} = [[-c, a], [a, 0]] / a^2
        S a2inv = ainv * ainv;
        ops.emplace_back(r, k, -((a * hj - c * hr) * a2inv));
        ops.emplace_back(j, k, -(hr * ainv));
      }
      unipotent(ops);
      if (!st.current()(j, j).is_zero()) {
        unipotent({{r, j, -(st.current()(j, j) * (C::from_int(2) * a).inv())}});
      }
      scale_one(r, ainv);
      form(r, j) = S::one();
      form(j, r) = S::one();
      std::erase(active, r);
      std::erase(active, j);
    }
  }
  return {st.witness(), pinv, form};
}

/// g with g^T g = h, built from the charsym form by explicit 2x2 square roots.
template <Coefficient C>
SeriesMatrix<C> sqrt_factor_symmetric(const SeriesMatrix<C>& h) {
  using S = LaurentSeries<C>;
  if (!det_is_square(h)) raise(ErrorCode::DetNotSquare, "ord det(h) is odd");
  CharsymForm<C> cf = charsym1_reduce(h);
  int n = h.n();
  SeriesMatrix<C> x(n);
  S s = (S::t_pow(1) - S::one()).sqrt();
  C i = C::imag_unit();
  C half = C::one() / C::from_int(2);
  std::vector<int> ts;
  for (int r = 0; r < n; ++r) {
    const S& e = cf.form(r, r);
    if (e.is_zero()) continue;
    if (e.ord() == 0) {
      x(r, r) = S::one();
    } else {
      ts.push_back(r);
    }
  }
  if (ts.size() % 2 != 0) raise(ErrorCode::DetNotSquare, "odd number of t's in the charsym form");
  for (std::size_t k = 0; k < ts.size(); k += 2) {
    int a = ts[k];
    int b = ts[k + 1];
    x(a, a) = S::one();
    x(a, b) = -s;
    x(b, a) = s;
    x(b, b) = S::one();
  }
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      if (cf.form(r, c).is_zero()) continue;
      x(r, r) = S::constant(i);
      x(r, c) = S::constant(-(i * half));
      x(c, r) = S::one();
      x(c, c) = S::constant(half);
    }
  }
  return x * cf.p_inv;
}

/// g_w with g_w^T g_w = w for w in eSymAPM.
template <Coefficient C>
SeriesMatrix<C> build_gw_On(const AffinePermutation& w) {
  using S = LaurentSeries<C>;
  auto cls = classify_membership(DecoratedMonomial<C>::pure(w));
  if (!cls.count(ApmClass::eSymAPM)) raise(ErrorCode::NotESymAPM, to_string(w) + " is not in eSymAPM");
  int n = w.n();
  SeriesMatrix<C> g(n);
  S s = (S::t_pow(1) - S::one()).sqrt();
  C i = C::imag_unit();
  C half = C::one() / C::from_int(2);
  std::vector<int> odd;
  for (int k = 0; k < n; ++k) {
    long c = w.shifts[static_cast<std::size_t>(k)];
    int j = w.bar(k);
    if (j == k) {
      if (c % 2 == 0) {
        g(k, k) = S::t_pow(c / 2);
      } else {
        odd.push_back(k);
      }
    } else if (k < j) {
      g(k, k) = S::constant(i);
      g(k, j) = S::monomial(-(i * half), c);
      g(j, k) = S::one();
      g(j, j) = S::monomial(half, c);
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

/// Canonical eSymAPM form of K g B, read off g^T g.
template <Coefficient C>
ReductionResult<C> classify_On(const SeriesMatrix<C>& g, bool keep_log = true) {
  SeriesMatrix<C> h = gram(g);
  if (!det_is_square(h)) raise(ErrorCode::DetNotSquare, "ord det(g^T g) is odd: precision was lost");
  return reduce_symmetric(h, keep_log);
}

}  // namespace affflag
