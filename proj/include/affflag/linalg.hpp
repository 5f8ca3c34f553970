#pragma once

// Dense square matrices over truncated Laurent series. Indices are 0-based.

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "affflag/laurent.hpp"

namespace affflag {

enum class MatrixClass { GLnA, Iwahori, OppositeIwahori, Monomial, Symmetric, Skew };

/// `ambiguous` is set when a decision depended on an entry whose known
/// precision was too small to settle it; `holds` is then the optimistic answer.
struct Membership {
  bool holds = false;
  bool ambiguous = false;
  explicit operator bool() const { return holds; }
};

template <Coefficient C>
class SeriesMatrix {
 public:
  using series = LaurentSeries<C>;

  SeriesMatrix() = default;
  explicit SeriesMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}
  SeriesMatrix(int n, std::vector<series> row_major) : n_(n), e_(std::move(row_major)) {
    if (e_.size() != static_cast<std::size_t>(n) * n) raise(ErrorCode::DimensionMismatch, "entry count is not n*n");
  }

  static SeriesMatrix zero(int n) { return SeriesMatrix(n); }

  static SeriesMatrix identity(int n, int terms = default_terms()) {
    SeriesMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = series::one(terms);
    return m;
  }

  static SeriesMatrix diagonal(const std::vector<series>& d) {
    SeriesMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  /// 1 + f E_ij.
  static SeriesMatrix elementary(int n, int i, int j, const series& f, int terms = default_terms()) {
    SeriesMatrix m = identity(n, terms);
    m(i, j) = (i == j) ? m(i, j) + f : f;
    return m;
  }

  int n() const { return n_; }
  series& operator()(int i, int j) { return e_[idx(i, j)]; }
  const series& operator()(int i, int j) const { return e_[idx(i, j)]; }
  const std::vector<series>& entries() const { return e_; }

  /// Smallest absolute precision over all entries.
  long precision() const {
    long p = kExactPrec;
    for (const auto& x : e_) p = std::min(p, x.prec());
    return p;
  }

  SeriesMatrix transpose() const {
    SeriesMatrix m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  friend SeriesMatrix operator+(const SeriesMatrix& x, const SeriesMatrix& y) {
    check_same(x, y);
    SeriesMatrix m(x.n_);
    for (std::size_t k = 0; k < x.e_.size(); ++k) m.e_[k] = x.e_[k] + y.e_[k];
    return m;
  }

  friend SeriesMatrix operator-(const SeriesMatrix& x, const SeriesMatrix& y) {
    check_same(x, y);
    SeriesMatrix m(x.n_);
    for (std::size_t k = 0; k < x.e_.size(); ++k) m.e_[k] = x.e_[k] - y.e_[k];
    return m;
  }

  SeriesMatrix operator-() const {
    SeriesMatrix m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }

  friend SeriesMatrix operator*(const SeriesMatrix& x, const SeriesMatrix& y) {
    check_same(x, y);
    int n = x.n_;
    SeriesMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        series acc;
        for (int k = 0; k < n; ++k) {
          const series& a = x(i, k);
          const series& b = y(k, j);
          if (a.is_exact_zero() || b.is_exact_zero()) continue;
          acc += a * b;
        }
        m(i, j) = acc;
      }
    }
    return m;
  }

  friend SeriesMatrix operator*(const series& f, const SeriesMatrix& x) {
    SeriesMatrix m = x;
    for (auto& e : m.e_) e = f * e;
    return m;
  }

  /// Equality to the common precision.
  friend bool operator==(const SeriesMatrix& x, const SeriesMatrix& y) {
    if (x.n_ != y.n_) return false;
    for (std::size_t k = 0; k < x.e_.size(); ++k)
      if (!(x.e_[k] == y.e_[k])) return false;
    return true;
  }

  /// Determinant by elimination, pivoting on the entry of least ord in each column.
  series det() const {
    SeriesMatrix a = *this;
    series result = series::one(static_cast<int>(std::max(1L, a.precision() - min_val())));
    bool negate = false;
    for (int k = 0; k < n_; ++k) {
      int piv = a.min_ord_row(k, k);
      if (piv < 0) {
        // Column k of the remaining block is zero to precision: every term of its
        // determinant takes one entry from it and one from each later column.
        long bound = result.ord();
        long col = kExactPrec;
        for (int r = k; r < n_; ++r) col = std::min(col, a(r, k).prec());
        bound += col;
        for (int c = k + 1; c < n_ && bound < kExactPrec; ++c) {
          long low = kExactPrec;
          for (int r = k; r < n_; ++r) low = std::min(low, a(r, c).ord_bound());
          bound += low;
        }
        return series::zero(std::min(bound, kExactPrec));
      }
      if (piv != k) {
        a.swap_rows(piv, k);
        negate = !negate;
      }
      const series& p = a(k, k);
      series pinv = p.inv();
      for (int r = k + 1; r < n_; ++r) {
        if (a(r, k).is_exact_zero()) continue;
        series f = a(r, k) * pinv;
        for (int c = k + 1; c < n_; ++c) a(r, c) -= f * a(k, c);
        a(r, k) = series();
      }
      result *= p;
    }
    return negate ? -result : result;
  }

  /// Inverse by Gauss-Jordan elimination with least-ord pivots.
  SeriesMatrix inverse() const {
    SeriesMatrix a = *this;
    SeriesMatrix inv = identity(n_, static_cast<int>(std::max(1L, precision() - min_val())));
    for (int k = 0; k < n_; ++k) {
      int piv = a.min_ord_row(k, k);
      if (piv < 0) raise(ErrorCode::NotInvertible, "no certified non-zero pivot in column " + std::to_string(k));
      a.swap_rows(piv, k);
      inv.swap_rows(piv, k);
      series pinv = a(k, k).inv();
      for (int c = 0; c < n_; ++c) {
        a(k, c) = pinv * a(k, c);
        inv(k, c) = pinv * inv(k, c);
      }
      for (int r = 0; r < n_; ++r) {
        if (r == k || a(r, k).is_exact_zero()) continue;
        series f = a(r, k);
        for (int c = 0; c < n_; ++c) {
          a(r, c) -= f * a(k, c);
          inv(r, c) -= f * inv(k, c);
        }
      }
    }
    return inv;
  }

  Membership member(MatrixClass cls) const {
    switch (cls) {
      case MatrixClass::GLnA: return in_gl_a();
      case MatrixClass::Iwahori: return in_iwahori(false);
      case MatrixClass::OppositeIwahori: return in_iwahori(true);
      case MatrixClass::Monomial: return monomial();
      case MatrixClass::Symmetric: return symmetric(false);
      case MatrixClass::Skew: return symmetric(true);
    }
    return {};
  }

  void swap_rows(int r, int s) {
    if (r == s) return;
    for (int c = 0; c < n_; ++c) std::swap((*this)(r, c), (*this)(s, c));
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  static void check_same(const SeriesMatrix& x, const SeriesMatrix& y) {
    if (x.n_ != y.n_) {
      raise(ErrorCode::DimensionMismatch, std::to_string(x.n_) + " vs " + std::to_string(y.n_));
    }
  }

  long min_val() const {
    long v = kExactPrec;
    for (const auto& x : e_)
      if (!x.is_zero()) v = std::min(v, x.val());
    return v == kExactPrec ? 0 : v;
  }

  int min_ord_row(int col, int from) const {
    int best = -1;
    for (int r = from; r < n_; ++r) {
      const series& x = (*this)(r, col);
      if (x.is_zero()) continue;
      if (best < 0 || x.val() < (*this)(best, col).val()) best = r;
    }
    return best;
  }

  // Entry known to have ord >= bound, cannot have, or precision does not tell.
  static void require_ord_at_least(const series& x, long bound, Membership& m) {
    if (!x.is_zero()) {
      if (x.val() < bound) m.holds = false;
    } else if (x.prec() < bound) {
      m.ambiguous = true;
    }
  }

  Membership in_gl_a() const {
    Membership m{true, false};
    for (const auto& x : e_) require_ord_at_least(x, 0, m);
    if (!m.holds) return m;
    try {
      series d = det();
      if (d.is_zero()) {
        m.holds = false;
        m.ambiguous = d.prec() <= 0;
      } else if (d.val() != 0) {
        m.holds = false;
      }
    } catch (const Error&) {
      m.holds = false;
      m.ambiguous = true;
    }
    return m;
  }

  Membership in_iwahori(bool opposite) const {
    Membership m = in_gl_a();
    if (!m.holds) return m;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (opposite ? i < j : i > j) require_ord_at_least((*this)(i, j), 1, m);
    return m;
  }

  Membership monomial() const {
    Membership m{true, false};
    std::vector<int> per_col(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      int per_row = 0;
      for (int j = 0; j < n_; ++j) {
        if (!(*this)(i, j).is_zero()) {
          ++per_row;
          ++per_col[static_cast<std::size_t>(j)];
        }
      }
      if (per_row != 1) m.holds = false;
    }
    for (int c : per_col)
      if (c != 1) m.holds = false;
    return m;
  }

  Membership symmetric(bool skew) const {
    Membership m{true, false};
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        series d = skew ? (*this)(i, j) + (*this)(j, i) : (*this)(i, j) - (*this)(j, i);
        if (!d.is_zero()) m.holds = false;
      }
    }
    return m;
  }

  int n_ = 0;
  std::vector<series> e_;
};

using MatrixExact = SeriesMatrix<CoeffExact>;
using MatrixApprox = SeriesMatrix<CoeffApprox>;

/// Copies the upper triangle onto the lower one, negated and with a zero diagonal
/// when `skew`. A no-op on matrices that already have the structure; in approx
/// mode it removes the rounding noise of products such as g^T g.
template <Coefficient C>
void impose_structure(SeriesMatrix<C>& h, bool skew) {
  for (int i = 0; i < h.n(); ++i) {
    if (skew) h(i, i) = LaurentSeries<C>::zero();
    for (int j = i + 1; j < h.n(); ++j) h(j, i) = skew ? -h(i, j) : h(i, j);
  }
}

/// g^T g, symmetric by construction.
template <Coefficient C>
SeriesMatrix<C> gram(const SeriesMatrix<C>& g) {
  SeriesMatrix<C> h = g.transpose() * g;
  impose_structure(h, false);
  return h;
}

/// b^T h b.
template <Coefficient C>
SeriesMatrix<C> congruence(const SeriesMatrix<C>& b, const SeriesMatrix<C>& h) {
  return b.transpose() * h * b;
}

/// Size of what is left in `d`, intended for a difference of two matrices that
/// should agree: 0 when every entry is zero to precision, else the largest
/// surviving coefficient modulus.
template <Coefficient C>
double residual(const SeriesMatrix<C>& d) {
  double worst = 0.0;
  for (const auto& x : d.entries()) {
    for (const C& c : x.coeffs()) {
      worst = std::max(worst, std::abs(c.to_complex()));
    }
  }
  return worst;
}

/// Least ord among the non-zero entries of `d`, or kExactPrec when all vanish.
template <Coefficient C>
long residual_ord(const SeriesMatrix<C>& d) {
  long v = kExactPrec;
  for (const auto& x : d.entries())
    if (!x.is_zero()) v = std::min(v, x.val());
  return v;
}

template <Coefficient C>
std::string to_string(const SeriesMatrix<C>& m) {
  std::string out;
  for (int i = 0; i < m.n(); ++i) {
    out += "[";
    for (int j = 0; j < m.n(); ++j) {
      if (j) out += ", ";
      out += to_string(m(i, j));
    }
    out += "]\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random elements used by tests and the CLI.

struct RandomBounds {
  int height = 3;     // |re|, |im| of integer coefficients
  int max_terms = 4;  // non-zero terms per random series
  int max_degree = 3; // exponent offset of the highest term
  bool gaussian = false;
};

template <Coefficient C>
C random_coeff(std::mt19937_64& rng, const RandomBounds& rb, bool nonzero) {
  std::uniform_int_distribution<int> d(-rb.height, rb.height);
  while (true) {
    long re = d(rng);
    long im = rb.gaussian ? d(rng) : 0;
    if (!nonzero || re != 0 || im != 0) return C::from_int(re, im);
  }
}

/// Random polynomial sum_{k = low}^{low + max_degree} c_k t^k with at most
/// max_terms non-zero terms; when `unit`, the t^low coefficient is non-zero.
template <Coefficient C>
LaurentSeries<C> random_series(std::mt19937_64& rng, const RandomBounds& rb, long low, bool unit,
                               int terms = default_terms()) {
  std::map<long, C> t;
  std::uniform_int_distribution<int> deg(0, rb.max_degree);
  std::uniform_int_distribution<int> count(unit ? 1 : 0, rb.max_terms);
  int k = count(rng);
  if (unit) t[low] = random_coeff<C>(rng, rb, true);
  while (static_cast<int>(t.size()) < k) {
    long e = low + deg(rng);
    if (!t.count(e)) t[e] = random_coeff<C>(rng, rb, true);
    if (static_cast<int>(t.size()) >= rb.max_degree + 1) break;
  }
  return LaurentSeries<C>::polynomial(t, terms);
}

/// Random Iwahori element T(A) * prod_{i<j} U_{ij,0} * prod_{i>j} U_{ij,1}.
/// With det_one the last diagonal unit is the inverse of the others' product.
template <Coefficient C>
SeriesMatrix<C> random_iwahori(int n, std::mt19937_64& rng, const RandomBounds& rb = {}, bool det_one = false,
                               int terms = default_terms()) {
  using S = LaurentSeries<C>;
  std::vector<S> d;
  S prod = S::one(terms);
  for (int i = 0; i < n; ++i) {
    if (det_one && i == n - 1) {
      d.push_back(prod.inv());
    } else {
      d.push_back(random_series<C>(rng, rb, 0, true, terms));
      prod *= d.back();
    }
  }
  SeriesMatrix<C> b = SeriesMatrix<C>::diagonal(d);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b = b * SeriesMatrix<C>::elementary(n, i, j, random_series<C>(rng, rb, 0, false, terms), terms);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) b = b * SeriesMatrix<C>::elementary(n, i, j, random_series<C>(rng, rb, 1, false, terms), terms);
  return b;
}

/// Random matrix with entries drawn as random series of ord >= low.
template <Coefficient C>
SeriesMatrix<C> random_matrix(int n, std::mt19937_64& rng, const RandomBounds& rb, long low,
                              int terms = default_terms()) {
  SeriesMatrix<C> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_series<C>(rng, rb, low, false, terms);
  return m;
}

/// Cayley transform (1 - x)(1 + x)^{-1}. For x in the Lie algebra of an
/// orthogonal or symplectic group this lands in the group.
template <Coefficient C>
SeriesMatrix<C> cayley(const SeriesMatrix<C>& x) {
  SeriesMatrix<C> one = SeriesMatrix<C>::identity(x.n());
  return (one - x) * (one + x).inverse();
}

/// Random symmetric matrix with entries of ord >= low (upper triangle drawn, then mirrored).
template <Coefficient C>
SeriesMatrix<C> random_symmetric(int n, std::mt19937_64& rng, const RandomBounds& rb, long low,
                                 int terms = default_terms()) {
  SeriesMatrix<C> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      m(i, j) = random_series<C>(rng, rb, low, false, terms);
      m(j, i) = m(i, j);
    }
  return m;
}

/// Random element of SO_n(F): the Cayley transform of a random skew matrix.
template <Coefficient C>
SeriesMatrix<C> random_special_orthogonal(int n, std::mt19937_64& rng, const RandomBounds& rb = {.height = 2},
                                          long low = -1, int terms = default_terms()) {
  SeriesMatrix<C> a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = random_series<C>(rng, rb, low, false, terms);
      a(j, i) = -a(i, j);
    }
  return cayley(a);
}

/// Random element of O_n(F): a special orthogonal one, times diag(-1, 1, ..., 1) half the time.
template <Coefficient C>
SeriesMatrix<C> random_orthogonal(int n, std::mt19937_64& rng, const RandomBounds& rb = {.height = 2}, long low = -1,
                                  int terms = default_terms()) {
  SeriesMatrix<C> k = random_special_orthogonal<C>(n, rng, rb, low, terms);
  if (rng() % 2) {
    for (int c = 0; c < n; ++c) k(0, c) = -k(0, c);
  }
  return k;
}

}  // namespace affflag
