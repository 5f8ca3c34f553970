#pragma once

// Orbits of Sp_2n(F) on GL_2n(F)/B: reduction of g^T J g to h^sk_w, the
// matching permutation sigma_w, and the representatives g_w.

#include <string>
#include <vector>

#include "affflag/elimination.hpp"

namespace affflag {

template <Coefficient C>
struct SkewCanonical {
  AffinePermutation w;
  DecoratedMonomial<C> form;
};

template <Coefficient C>
struct ReductionSp {
  SkewCanonical<C> canon;
  SeriesMatrix<C> witness;
  std::vector<ReductionStep<C>> steps;
};

/// J = [[0, 1_n], [-1_n, 0]].
template <Coefficient C>
SeriesMatrix<C> sp_form(int n) {
  if (n < 1) raise(ErrorCode::DimensionMismatch, "sp_form needs n >= 1");
  using S = LaurentSeries<C>;
  SeriesMatrix<C> j(2 * n);
  for (int k = 0; k < n; ++k) {
    j(k, k + n) = S::one();
    j(k + n, k) = -S::one();
  }
  return j;
}

/// Random element of Sp_2n(F): the Cayley transform of J^{-1} S for a random symmetric S.
template <Coefficient C>
SeriesMatrix<C> random_symplectic(int n, std::mt19937_64& rng, const RandomBounds& rb = {.height = 2}, long low = -1,
                                  int terms = default_terms()) {
  SeriesMatrix<C> s = random_symmetric<C>(2 * n, rng, rb, low, terms);
  return cayley(SeriesMatrix<C>(-(sp_form<C>(n) * s)));
}

/// w_J = (1 n+1)(2 n+2)...(n 2n).
inline Permutation w_J(int n) {
  std::vector<int> img(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    img[static_cast<std::size_t>(k)] = k + n;
    img[static_cast<std::size_t>(k + n)] = k;
  }
  return Permutation(img);
}

inline void require_fpf_involution(const Permutation& p) {
  if (p.n() % 2 != 0 || !p.is_involution() || !p.fixed_points().empty()) {
    raise(ErrorCode::NotFpfInvolution, to_string(p) + " is not a fixed-point-free involution");
  }
}

/// sigma with sigma^{-1} w_J sigma = fpf. Sweeps j = 1..n, transposing j + n with
/// the current partner of j; sigma is the product of these transpositions, latest on the left.
inline Permutation sigma_w(const Permutation& fpf) {
  require_fpf_involution(fpf);
  int n = fpf.n() / 2;
  Permutation cur = fpf;
  Permutation sigma = Permutation::identity(2 * n);
  for (int j = 0; j < n; ++j) {
    int partner = cur(j);
    if (partner == j + n) continue;
    Permutation tau = Permutation::transposition(2 * n, j + n, partner);
    cur = tau * cur * tau;
    sigma = tau * sigma;
  }
  return sigma;
}

/// h^sk_w: the matrix of w with the entries below the diagonal negated.
template <Coefficient C>
DecoratedMonomial<C> h_sk(const AffinePermutation& w) {
  require_fpf_involution(w.bar);
  if (!w.is_twisted_involution()) raise(ErrorCode::NotFpfInvolution, to_string(w) + " is not a twisted involution");
  DecoratedMonomial<C> d = DecoratedMonomial<C>::pure(w);
  for (int j = 0; j < w.n(); ++j)
    if (w.bar(j) > j) d.units[static_cast<std::size_t>(j)] = -C::one();
  return d;
}

struct SpData {
  Permutation sigma;
  Permutation s;
  std::vector<long> sqrt_c;
  AffinePermutation g;  // (sigma, 0) (id, sqrt_c) (s, 0)
};

/// The combinatorial data behind g_w.
inline SpData sp_data(const AffinePermutation& w) {
  require_fpf_involution(w.bar);
  if (!w.is_twisted_involution()) raise(ErrorCode::NotFpfInvolution, to_string(w) + " is not a twisted involution");
  int m = w.n();
  int n = m / 2;
  Permutation sigma = sigma_w(w.bar);
  std::vector<int> s_img = Permutation::identity(m).images();
  std::vector<long> root = w.shifts;
  for (int a = 0; a < m; ++a) {
    int b = w.bar(a);
    if (a > b) continue;
    root[static_cast<std::size_t>(b)] = 0;
    // (sigma^T J sigma)(a, b) = J(sigma(a), sigma(b)) is -1 exactly when sigma(a) >= n.
    if (sigma(a) >= n) {
      s_img[static_cast<std::size_t>(a)] = b;
      s_img[static_cast<std::size_t>(b)] = a;
    }
  }
  Permutation s(s_img);
  std::vector<long> zero(static_cast<std::size_t>(m), 0);
  AffinePermutation g = AffinePermutation{sigma, zero} * AffinePermutation{Permutation::identity(m), root} *
                        AffinePermutation{s, zero};
  return {sigma, s, root, g};
}

/// g_w with g_w^T J g_w = h^sk_w.
template <Coefficient C>
SeriesMatrix<C> build_gw_Sp(const AffinePermutation& w) {
  return to_matrix<C>(sp_data(w).g);
}

/// Brings a skew-symmetric h to h^sk_w by Iwahori congruence.
template <Coefficient C>
ReductionSp<C> reduce_skew(const SeriesMatrix<C>& h, bool keep_log = true) {
  using S = LaurentSeries<C>;
  if (!h.member(MatrixClass::Skew)) raise(ErrorCode::NotSkew, "h is not skew-symmetric to precision");
  if (h.n() % 2 != 0) raise(ErrorCode::NotInvertible, "odd-dimensional skew matrices are singular");
  CongruenceState<C> st(h, keep_log, Structure::Skew);
  auto blocks = eliminate(st, true);
  int n = h.n();
  std::vector<S> s(static_cast<std::size_t>(n), S::one());
  std::vector<int> img(static_cast<std::size_t>(n));
  std::vector<long> exps(static_cast<std::size_t>(n));
  for (const auto& b : blocks) {
    const S& upper = st.current()(b.j, b.i);
    s[static_cast<std::size_t>(b.i)] = detail::unit_part(upper).inv();
    img[static_cast<std::size_t>(b.i)] = b.j;
    img[static_cast<std::size_t>(b.j)] = b.i;
    exps[static_cast<std::size_t>(b.i)] = upper.ord();
    exps[static_cast<std::size_t>(b.j)] = upper.ord();
  }
  st.scale(s);
  AffinePermutation w{Permutation(img), exps};
  return {{w, h_sk<C>(w)}, st.witness(), st.take_steps()};
}

/// g^T J g, skew by construction.
template <Coefficient C>
SeriesMatrix<C> gram_skew(const SeriesMatrix<C>& g) {
  if (g.n() % 2 != 0) raise(ErrorCode::DimensionMismatch, "symplectic case needs even dimension");
  SeriesMatrix<C> h = g.transpose() * sp_form<C>(g.n() / 2) * g;
  impose_structure(h, true);
  return h;
}

/// Canonical form of K g B, read off g^T J g.
template <Coefficient C>
ReductionSp<C> classify_Sp(const SeriesMatrix<C>& g, bool keep_log = true) {
  return reduce_skew(gram_skew(g), keep_log);
}

}  // namespace affflag
