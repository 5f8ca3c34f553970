#pragma once

// Iwahori congruence elimination shared by the orthogonal, special orthogonal
// and symplectic reductions. Brings a symmetric or skew-symmetric h to a
// monomial matrix using only unipotent elements of B, recording every factor.

#include <string>
#include <tuple>
#include <vector>

#include "affflag/affperm.hpp"

namespace affflag {

template <Coefficient C>
struct ReductionStep {
  std::string kind;         // "eliminate", "block", "scale"
  SeriesMatrix<C> factor;   // the element b applied as h -> b^T h b
};

enum class Structure { General, Symmetric, Skew };

/// Running state: h_cur = witness^T h_in witness, and witness = product of factors.
/// A symmetric or skew h keeps its structure exactly after every step.
template <Coefficient C>
class CongruenceState {
 public:
  using S = LaurentSeries<C>;

  CongruenceState(SeriesMatrix<C> h, bool keep_log, Structure structure = Structure::General)
      : h_(std::move(h)), w_(SeriesMatrix<C>::identity(h_.n())), keep_log_(keep_log), structure_(structure) {
    settle();
  }

  const SeriesMatrix<C>& current() const { return h_; }
  const SeriesMatrix<C>& witness() const { return w_; }
  const std::vector<ReductionStep<C>>& steps() const { return steps_; }
  std::vector<ReductionStep<C>> take_steps() { return std::move(steps_); }

  /// b = 1 + sum x E_{p,k}; no source p may also be a target k.
  void unipotent(const std::vector<std::tuple<int, int, S>>& ops, const std::string& kind) {
    int n = h_.n();
    for (const auto& [p, k, x] : ops) {
      if (x.is_exact_zero()) continue;
      for (int r = 0; r < n; ++r) h_(r, k) += x * h_(r, p);
      for (int r = 0; r < n; ++r) w_(r, k) += x * w_(r, p);
    }
    for (const auto& [p, k, x] : ops) {
      if (x.is_exact_zero()) continue;
      for (int c = 0; c < n; ++c) h_(k, c) += x * h_(p, c);
    }
    settle();
    if (keep_log_) {
      SeriesMatrix<C> b = SeriesMatrix<C>::identity(n);
      for (const auto& [p, k, x] : ops) b(p, k) = x;
      steps_.push_back({kind, std::move(b)});
    }
  }

  /// b = diag(s).
  void scale(const std::vector<S>& s) {
    int n = h_.n();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (!h_(r, c).is_exact_zero()) h_(r, c) = (s[static_cast<std::size_t>(r)] * s[static_cast<std::size_t>(c)]) * h_(r, c);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) w_(r, c) = s[static_cast<std::size_t>(c)] * w_(r, c);
    settle();
    if (keep_log_) steps_.push_back({"scale", SeriesMatrix<C>::diagonal(s)});
  }

  /// Records that entries (r, c) and (c, r) vanish by construction. Exact mode
  /// already has them at zero; approx mode would otherwise keep rounding noise.
  void annihilate(int r, int c) {
    h_(r, c) = S::zero();
    h_(c, r) = S::zero();
  }

  /// Scales only index i by f (all other factors 1).
  void scale_one(int i, const S& f) {
    std::vector<S> s(static_cast<std::size_t>(h_.n()), S::one());
    s[static_cast<std::size_t>(i)] = f;
    scale(s);
  }

 private:
  void settle() {
    if (structure_ != Structure::General) impose_structure(h_, structure_ == Structure::Skew);
  }

  SeriesMatrix<C> h_;
  SeriesMatrix<C> w_;
  bool keep_log_;
  Structure structure_;
  std::vector<ReductionStep<C>> steps_;
};

/// Pivot block found by the elimination: (j, i) with j <= i; j == i is a diagonal pivot.
struct PivotBlock {
  int j;
  int i;
  long ord;
};

namespace detail {

template <Coefficient C>
LaurentSeries<C> unit_part(const LaurentSeries<C>& f) {
  return f.shifted(-f.ord());
}

// Series whose leading coefficient is 1; a leading -1 (from a flipped branch) is negated.
template <Coefficient C>
LaurentSeries<C> with_positive_lead(const LaurentSeries<C>& r) {
  if (r.lead().is_one()) return r;
  return -r;
}

template <Coefficient C>
void check_iwahori_op(int p, int k, const LaurentSeries<C>& x) {
  if (x.is_zero()) return;
  long need = p < k ? 0 : 1;
  if (x.val() < need) {
    raise(ErrorCode::PrecisionExhausted, "multiplier for E_" + std::to_string(p + 1) + std::to_string(k + 1) +
                                             " has ord " + std::to_string(x.val()) + ", leaves the Iwahori subgroup");
  }
}

template <Coefficient C>
PivotBlock find_pivot(const SeriesMatrix<C>& h, const std::vector<int>& active) {
  long m = kExactPrec;
  int best_r = -1;
  int best_c = -1;
  bool any_inexact_zero = false;
  for (int c : active) {
    for (int r : active) {
      const auto& x = h(r, c);
      if (x.is_zero()) {
        if (!x.is_exact_zero()) any_inexact_zero = true;
        continue;
      }
      long v = x.val();
      if (v < m || (v == m && (c < best_c || (c == best_c && r < best_r)))) {
        m = v;
        best_r = r;
        best_c = c;
      }
    }
  }
  if (best_r < 0) {
    if (any_inexact_zero) raise(ErrorCode::PrecisionExhausted, "remaining block is zero to the working precision");
    raise(ErrorCode::NotInvertible, "remaining block is zero");
  }
  // Zero entries must be certified: ord > m where the pivot rule needs strictness.
  for (int c : active) {
    for (int r : active) {
      const auto& x = h(r, c);
      if (!x.is_zero()) continue;
      bool strict = c < best_c || (c == best_c && r < best_r) || r < best_c || (r == best_c && c < best_r);
      long need = strict ? m + 1 : m;
      if (x.prec() < need) {
        raise(ErrorCode::PrecisionExhausted, "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                                 ") is only known to O(t^" + std::to_string(x.prec()) +
                                                 "), pivot order is " + std::to_string(m));
      }
    }
  }
  return {best_c, best_r, m};
}

}  // namespace detail

/// Unipotent Iwahori elimination. On return every pivot block is isolated:
/// a diagonal pivot (i, i) is the only non-zero entry of its row and column, and
/// a pair (j, i) carries antidiag(c, +-c) with zero diagonal.
template <Coefficient C>
std::vector<PivotBlock> eliminate(CongruenceState<C>& st, bool skew) {
  using S = LaurentSeries<C>;
  int n = st.current().n();
  std::vector<int> active;
  for (int k = 0; k < n; ++k) active.push_back(k);
  std::vector<PivotBlock> blocks;

  while (!active.empty()) {
    const SeriesMatrix<C>& h = st.current();
    PivotBlock pv = detail::find_pivot(h, active);
    int i = pv.i;
    int j = pv.j;
    std::vector<std::tuple<int, int, S>> ops;
    if (i == j) {
      if (skew) raise(ErrorCode::NotSkew, "non-zero diagonal entry in a skew-symmetric matrix");
      S inv = h(i, i).inv();
      for (int k : active) {
        if (k == i) continue;
        S x = -(h(i, k) * inv);
        detail::check_iwahori_op(i, k, x);
        ops.emplace_back(i, k, x);
      }
      st.unipotent(ops, "eliminate");
      for (int k : active)
        if (k != i) st.annihilate(i, k);
    } else {
      // 2x2 pivot block M on {j, i}; x = -M^{-1} h[{j,i}, k] for every other k.
      S a = h(j, j);
      S b = h(j, i);
      S c = h(i, j);
      S d = h(i, i);
      S det = a * d - b * c;
      S dinv = det.inv();
      for (int k : active) {
        if (k == i || k == j) continue;
        const S& hj = h(j, k);
        const S& hi = h(i, k);
        S xj = -((d * hj - b * hi) * dinv);
        S xi = -((a * hi - c * hj) * dinv);
        detail::check_iwahori_op(j, k, xj);
        detail::check_iwahori_op(i, k, xi);
        ops.emplace_back(j, k, xj);
        ops.emplace_back(i, k, xi);
      }
      st.unipotent(ops, "eliminate");
      for (int k : active) {
        if (k == i || k == j) continue;
        st.annihilate(j, k);
        st.annihilate(i, k);
      }
      if (!skew) {
        const SeriesMatrix<C>& h2 = st.current();
        S a2 = h2(j, j);
        S c2 = h2(i, j);
        S d2 = h2(i, i);
        if (!a2.is_zero()) {
          // q solves d q^2 + 2 c q + a = 0 with q in tA.
          S one = S::one();
          S r = detail::with_positive_lead((one - a2 * d2 * (c2 * c2).inv()).sqrt());
          S q = -(a2 * (c2 * (one + r)).inv());
          detail::check_iwahori_op(i, j, q);
          st.unipotent({{i, j, q}}, "block");
          st.annihilate(j, j);
        }
        const SeriesMatrix<C>& h3 = st.current();
        if (!h3(i, i).is_zero()) {
          S p = -(h3(i, i) * (C::from_int(2) * h3(i, j)).inv());
          detail::check_iwahori_op(j, i, p);
          st.unipotent({{j, i, p}}, "block");
          st.annihilate(i, i);
        }
      }
    }
    blocks.push_back(pv);
    std::erase_if(active, [&](int k) { return k == i || k == j; });
  }
  return blocks;
}

/// Decorated monomial read off the isolated pivot blocks (entries at the pivot positions).
template <Coefficient C>
SeriesMatrix<C> pivot_entries(const SeriesMatrix<C>& h, const std::vector<PivotBlock>& blocks) {
  SeriesMatrix<C> m(h.n());
  for (const auto& b : blocks) {
    m(b.i, b.j) = h(b.i, b.j);
    m(b.j, b.i) = h(b.j, b.i);
  }
  return m;
}

}  // namespace affflag
