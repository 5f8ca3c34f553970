#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace testing;

namespace {

// Sum over all permutations, for comparison with the pivoted elimination.
template <Coefficient C>
LaurentSeries<C> leibniz_det(const SeriesMatrix<C>& m) {
  int n = m.n();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  LaurentSeries<C> total;
  do {
    LaurentSeries<C> term = LaurentSeries<C>::constant(C::from_int(Permutation(p).sign()));
    for (int i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST_CASE_TEMPLATE("matrix arithmetic examples", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  std::mt19937_64 rng(31);
  M x = random_matrix<C>(3, rng, {}, -1);
  check_same(x.transpose().transpose(), x);
  auto t = ser<C>("t");
  check_same(M::elementary(3, 1, 0, t) * M::elementary(3, 1, 0, -t), M::identity(3));
  // (0 t^3; t^3 0) = (i 1; -i t^3/2 t^3/2)(i -i t^3/2; 1 t^3/2)
  M l = mat<C>(2, {"i", "1", "-1/2*i*t^3", "1/2*t^3"});
  M r = mat<C>(2, {"i", "-1/2*i*t^3", "1", "1/2*t^3"});
  check_same(l * r, mat<C>(2, {"0", "t^3", "t^3", "0"}));
  check_same(l.transpose(), r);
}

TEST_CASE_TEMPLATE("determinant examples", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  CHECK(M::identity(4).det() == LaurentSeries<C>::one());
  CHECK(M::diagonal({ser<C>("t^2"), ser<C>("t^-1")}).det() == ser<C>("t"));
  M p = to_matrix<C>(apm("(1 2 3)(4 6) ; 1,-1,2,0,-2,3"));
  auto d = p.det();
  CHECK(d == leibniz_det(p));
  // Shifts sum to 3; the permutation (1 2 3)(4 6) is odd.
  CHECK(d == -ser<C>("t^3"));
}

TEST_CASE_TEMPLATE("determinant agrees with the permutation expansion", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 10; ++k) {
    auto m = random_matrix<C>(4, rng, {}, -1);
    auto d = leibniz_det(m);
    if (d.is_zero()) continue;
    CHECK(m.det() == d);
  }
}

TEST_CASE_TEMPLATE("congruence examples", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  std::mt19937_64 rng(33);
  M h = random_symmetric<C>(3, rng, {}, -1);
  check_same(congruence(M::identity(3), h), h);
  M b = random_iwahori<C>(3, rng);
  CHECK(congruence(b, h).member(MatrixClass::Symmetric));
  // b = [[1, -t], [0, 1]], h = [[t, t], [t, 0]]: by hand b^T h b = [[t, t - t^2], [t - t^2, -2t^2 + t^3]].
  M b2 = mat<C>(2, {"1", "-t", "0", "1"});
  M h2 = mat<C>(2, {"t", "t", "t", "0"});
  check_same(congruence(b2, h2), mat<C>(2, {"t", "t - t^2", "t - t^2", "-2*t^2 + t^3"}));
}

TEST_CASE_TEMPLATE("membership examples", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  auto geo = ser<C>("1 - t").inv();
  M first(3, {ser<C>("1"), ser<C>("1 + t"), geo,
              LaurentSeries<C>(), ser<C>("1 + t^2"), ser<C>("t + t^3"),
              LaurentSeries<C>(), LaurentSeries<C>(), ser<C>("-1 + t^2 + t^4")});
  CHECK(first.member(MatrixClass::Iwahori));
  M second(3, {ser<C>("1"), ser<C>("1 + t"), geo,
               ser<C>("t"), ser<C>("1 + t^2"), ser<C>("t + t^3"),
               ser<C>("t") * geo, ser<C>("t + t^3 + t^5"), ser<C>("-1 + t^2 + t^4")});
  CHECK(second.member(MatrixClass::Iwahori));
  CHECK_FALSE(second.member(MatrixClass::OppositeIwahori));
  M third(3, {ser<C>("1"), ser<C>("1 + t"), geo,
              LaurentSeries<C>(), ser<C>("1"), ser<C>("t + t^3"),
              LaurentSeries<C>(), LaurentSeries<C>(), ser<C>("t")});
  CHECK(third.det() == ser<C>("t"));
  CHECK_FALSE(third.member(MatrixClass::Iwahori));
  CHECK_FALSE(third.member(MatrixClass::GLnA));

  M one = M::identity(3);
  for (auto cls : {MatrixClass::GLnA, MatrixClass::Iwahori, MatrixClass::OppositeIwahori, MatrixClass::Monomial,
                   MatrixClass::Symmetric})
    CHECK(one.member(cls));
  CHECK_FALSE(one.member(MatrixClass::Skew));
  CHECK(sp_form<C>(2).member(MatrixClass::Skew));
  CHECK_FALSE(mat<C>(2, {"t^-1", "0", "0", "t"}).member(MatrixClass::GLnA));
}

TEST_CASE("membership reports precision-ambiguous entries") {
  MatrixExact m = MatrixExact::identity(2);
  m(1, 0) = SeriesExact::zero(1);
  CHECK(m.member(MatrixClass::Iwahori).holds);
  CHECK_FALSE(m.member(MatrixClass::Iwahori).ambiguous);
  m(1, 0) = SeriesExact::zero(0);
  auto r = m.member(MatrixClass::Iwahori);
  CHECK(r.ambiguous);
}

TEST_CASE_TEMPLATE("congruence is a right action", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 10; ++k) {
    auto h = random_symmetric<C>(3, rng, {}, -1);
    auto b1 = random_iwahori<C>(3, rng);
    auto b2 = random_iwahori<C>(3, rng);
    check_same(congruence(b2, congruence(b1, h)), congruence(SeriesMatrix<C>(b1 * b2), h));
  }
}

TEST_CASE_TEMPLATE("determinant is multiplicative", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 20; ++k) {
    auto x = random_matrix<C>(3, rng, {}, -1);
    auto y = random_matrix<C>(3, rng, {}, 0);
    auto dx = x.det();
    auto dy = y.det();
    if (dx.is_zero() || dy.is_zero()) continue;
    CHECK((x * y).det() == dx * dy);
  }
}

TEST_CASE_TEMPLATE("Iwahori subgroup is closed under products and inverses", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(36);
  for (int k = 0; k < 20; ++k) {
    auto b1 = random_iwahori<C>(3, rng);
    auto b2 = random_iwahori<C>(3, rng);
    CHECK(b1.member(MatrixClass::Iwahori));
    CHECK((b1 * b2).member(MatrixClass::Iwahori));
    auto inv = b1.inverse();
    CHECK(inv.member(MatrixClass::Iwahori));
    check_same(SeriesMatrix<C>(b1 * inv), SeriesMatrix<C>::identity(3));
    CHECK(random_iwahori<C>(4, rng, {}, true).det() == LaurentSeries<C>::one());
  }
}

TEST_CASE_TEMPLATE("Iwahori factorization products pass the predicate", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  std::mt19937_64 rng(37);
  for (int k = 0; k < 20; ++k) {
    int n = 4;
    std::vector<LaurentSeries<C>> d;
    for (int i = 0; i < n; ++i) d.push_back(random_series<C>(rng, {}, 0, true));
    M b = M::diagonal(d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) b = b * M::elementary(n, i, j, random_series<C>(rng, {}, i < j ? 0 : 1, false));
    CHECK(b.member(MatrixClass::Iwahori));
  }
}

TEST_CASE_TEMPLATE("Cayley transforms land in the orthogonal and symplectic groups", C, CoeffExact, CoeffApprox) {
  using M = SeriesMatrix<C>;
  std::mt19937_64 rng(38);
  for (int k = 0; k < 5; ++k) {
    M q = random_special_orthogonal<C>(3, rng);
    check_same(M(q.transpose() * q), M::identity(3));
    CHECK(q.det() == LaurentSeries<C>::one());
    M o = random_orthogonal<C>(3, rng);
    check_same(M(o.transpose() * o), M::identity(3));
    M s = random_symplectic<C>(2, rng);
    check_same(M(s.transpose() * sp_form<C>(2) * s), sp_form<C>(2));
  }
}

TEST_CASE("dimension mismatch is reported") {
  CHECK(code_of([] { (void)(MatrixExact::identity(2) * MatrixExact::identity(3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { (void)MatrixExact(2, {SeriesExact()}); }) == ErrorCode::DimensionMismatch);
}
