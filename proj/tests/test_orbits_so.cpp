#include "support.hpp"

using namespace testing;

namespace {

template <Coefficient C>
SeriesMatrix<C> golden_g5() {
  using S = LaurentSeries<C>;
  auto r = root_t_minus_one<C>();
  SeriesMatrix<C> g(5);
  g(0, 0) = ser<C>("1/2*t^2");
  g(0, 1) = ser<C>("i");
  g(1, 0) = ser<C>("1/2*i*t^2");
  g(1, 1) = ser<C>("1");
  g(2, 2) = ser<C>("t^-1");
  g(2, 3) = -(r * S::t_pow(-1));
  g(3, 2) = S::t_pow(-1) * r;
  g(3, 3) = ser<C>("t^-1");
  g(4, 4) = ser<C>("t^-1");
  return g;
}

template <Coefficient C>
SeriesMatrix<C> golden_g4(Sign s) {
  if (s == Sign::Plus)
    return mat<C>(4, {"1/2*t^2", "i", "0", "0", "1/2*i*t^2", "1", "0", "0",
                      "0", "0", "1/2*t^-2", "i", "0", "0", "1/2*i*t^-2", "1"});
  return mat<C>(4, {"i", "-1/2*t^2", "0", "0", "1", "-1/2*i*t^2", "0", "0",
                    "0", "0", "1/2*t^-2", "i", "0", "0", "1/2*i*t^-2", "1"});
}

template <Coefficient C>
void check_reduction(const SeriesMatrix<C>& h, const ReductionSO<C>& r) {
  CHECK(r.witness.member(MatrixClass::Iwahori));
  CHECK(r.witness.det() == LaurentSeries<C>::one());
  check_same(congruence(r.witness, h), r.canon.form.to_matrix());
  auto cls = classify_membership(r.canon.form);
  CHECK((cls.count(ApmClass::iSymAPM_case_i) + cls.count(ApmClass::iSymAPM_case_ii)) == 1);
}

}  // namespace

TEST_CASE_TEMPLATE("h_w displays", C, CoeffExact, CoeffApprox) {
  AffinePermutation w = apm("(1 2) ; 2,2,-1,-1,-2");
  check_same(build_hw<C>(w).to_matrix(), mat<C>(5, {"0", "i*t^2", "0", "0", "0",
                                                   "i*t^2", "0", "0", "0", "0",
                                                   "0", "0", "t^-1", "0", "0",
                                                   "0", "0", "0", "t^-1", "0",
                                                   "0", "0", "0", "0", "t^-2"}));
  AffinePermutation v = apm("(1 2)(3 4) ; 2,2,-2,-2");
  check_same(build_hw_pm<C>(v, Sign::Minus).to_matrix(), mat<C>(4, {"0", "-i*t^2", "0", "0",
                                                                    "-i*t^2", "0", "0", "0",
                                                                    "0", "0", "0", "i*t^-2",
                                                                    "0", "0", "i*t^-2", "0"}));
  check_same(build_hw_pm<C>(v, Sign::Plus).to_matrix(), mat<C>(4, {"0", "i*t^2", "0", "0",
                                                                   "i*t^2", "0", "0", "0",
                                                                   "0", "0", "0", "i*t^-2",
                                                                   "0", "0", "i*t^-2", "0"}));
  check_same(build_hw<C>(AffinePermutation::identity(3)).to_matrix(), SeriesMatrix<C>::identity(3));
  CHECK(code_of([] { (void)build_hw<C>(apm("(1 2) ; 1,1,0")); }) == ErrorCode::NotAffineTwistedInvolution);
  CHECK(code_of([] { (void)build_hw_pm<C>(apm("(1 2) ; 0,0,0"), Sign::Plus); }) == ErrorCode::HasFixedPoint);
  CHECK(code_of([] { (void)build_gw_SOn<C>(apm("(1 2) ; 0,0"), Sign::None); }) == ErrorCode::SignRequired);
}

TEST_CASE_TEMPLATE("golden special orthogonal representatives", C, CoeffExact, CoeffApprox) {
  AffinePermutation w = apm("(1 2) ; 2,2,-1,-1,-2");
  auto g = build_gw_SOn<C>(w, Sign::None);
  check_same(g, golden_g5<C>());
  check_same(gram(g), build_hw<C>(w).to_matrix());
  CHECK(g.det() == LaurentSeries<C>::one());

  AffinePermutation v = apm("(1 2)(3 4) ; 2,2,-2,-2");
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    auto gs = build_gw_SOn<C>(v, s);
    check_same(gs, golden_g4<C>(s));
    check_same(gram(gs), build_hw_pm<C>(v, s).to_matrix());
    CHECK(gs.det() == LaurentSeries<C>::one());
    auto r = classify_SOn(gs);
    CHECK(r.canon.w == v);
    CHECK(r.canon.sign == s);
  }
}

TEST_CASE_TEMPLATE("reduce_symmetric_sl examples", C, CoeffExact, CoeffApprox) {
  auto r = reduce_symmetric_sl(SeriesMatrix<C>::identity(3));
  CHECK(r.canon.w == AffinePermutation::identity(3));
  CHECK(r.canon.sign == Sign::None);
  // At n = 2 the only fixed-point-free choice with shift sum 0 is (1 2) with shifts 0, 0.
  std::vector<AffinePermutation> ws{{Permutation::from_cycles(2, {{1, 2}}), {0, 0}}};
  for (long k : {-2L, 3L}) ws.push_back({Permutation::from_cycles(4, {{1, 2}, {3, 4}}), {k, k, -k, -k}});
  for (const auto& w : ws) {
    auto plus = reduce_symmetric_sl(gram(build_gw_SOn<C>(w, Sign::Plus)));
    auto minus = reduce_symmetric_sl(gram(build_gw_SOn<C>(w, Sign::Minus)));
    CHECK(plus.canon.sign == Sign::Plus);
    CHECK(minus.canon.sign == Sign::Minus);
    CHECK(plus.canon.w == w);
    CHECK(minus.canon.w == w);
  }
  CHECK(code_of([] { (void)reduce_symmetric_sl(mat<C>(2, {"t", "0", "0", "1"})); }) == ErrorCode::DetNotOne);
  CHECK(code_of([] { (void)classify_SOn(mat<C>(2, {"t", "0", "0", "1"})); }) == ErrorCode::DetNotOne);
}

TEST_CASE_TEMPLATE("planted special orthogonal forms are recovered", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(61);
  for (int n : {3, 4}) {
    auto items = enumerate_all({n, 1, EnumSet::iSymAPM});
    for (int k = 0; k < 15; ++k) {
      const auto& it = items[rng() % items.size()];
      auto h = congruence(random_iwahori<C>(n, rng, {}, true), build_h_so<C>(it.w, it.sign).to_matrix());
      auto r = reduce_symmetric_sl(h);
      INFO(to_string(it.w) << " " << to_string(it.sign));
      CHECK(r.canon.w == it.w);
      CHECK(r.canon.sign == it.sign);
      check_reduction(h, r);
    }
  }
}

TEST_CASE_TEMPLATE("classify_SOn round trip and diagonal representatives", C, CoeffExact, CoeffApprox) {
  auto id = classify_SOn(SeriesMatrix<C>::identity(4));
  CHECK(id.canon.w == AffinePermutation::identity(4));
  CHECK(id.canon.sign == Sign::None);
  for (int n = 2; n <= 4; ++n)
    for (const auto& it : enumerate_all({n, 1, EnumSet::iSymAPM})) {
      auto g = build_gw_SOn<C>(it.w, it.sign);
      CHECK(g.det() == LaurentSeries<C>::one());
      auto r = classify_SOn(g, false);
      INFO(to_string(it.w) << " " << to_string(it.sign));
      CHECK(r.canon.w == it.w);
      CHECK(r.canon.sign == it.sign);
    }
  for (long k = -3; k <= 3; ++k) {
    SeriesMatrix<C> g = SeriesMatrix<C>::diagonal({LaurentSeries<C>::t_pow(k), LaurentSeries<C>::t_pow(-k)});
    auto r = classify_SOn(g);
    CHECK(r.canon.w == AffinePermutation{Permutation::identity(2), {2 * k, -2 * k}});
    CHECK(r.canon.sign == Sign::None);
  }
}

TEST_CASE_TEMPLATE("classify_SOn is right invariant", C, CoeffExact, CoeffApprox) {
  auto items = enumerate_all({4, 1, EnumSet::iSymAPM});
  std::mt19937_64 rng(62);
  for (int k = 0; k < 15; ++k) {
    const auto& it = items[rng() % items.size()];
    auto g = build_gw_SOn<C>(it.w, it.sign);
    auto b = random_iwahori<C>(4, rng, {}, true);
    auto r = classify_SOn(SeriesMatrix<C>(random_special_orthogonal<C>(4, rng) * g * b), false);
    CHECK(r.canon.w == it.w);
    CHECK(r.canon.sign == it.sign);
  }
}

TEST_CASE("signs are rigid under det-1 Iwahori congruence") {
  using C = CoeffExact;
  AffinePermutation v = apm("(1 2)(3 4) ; 2,2,-2,-2");
  auto plus = build_hw_pm<C>(v, Sign::Plus).to_matrix();
  auto minus = build_hw_pm<C>(v, Sign::Minus).to_matrix();
  std::mt19937_64 rng(63);
  for (int k = 0; k < 30; ++k) CHECK(residual(SeriesMatrix<C>(congruence(random_iwahori<C>(4, rng, {}, true), plus) - minus)) > 0.0);
  std::vector<LaurentSeries<C>> d(4, LaurentSeries<C>::one());
  d[0] = -LaurentSeries<C>::one();
  auto dm = SeriesMatrix<C>::diagonal(d);
  CHECK(dm.det() == -LaurentSeries<C>::one());
  check_same(congruence(dm, plus), minus);
}

TEST_CASE_TEMPLATE("substituted 2x2 blocks square to their h blocks", C, CoeffExact, CoeffApprox) {
  using S = LaurentSeries<C>;
  auto r = root_t_minus_one<C>();
  for (long a = -5; a <= 5; a += 2)
    for (long b = -5; b <= 5; b += 2) {
      SeriesMatrix<C> blk(2, {S::t_pow((a - 1) / 2), -(r.shifted((b - 1) / 2)), r.shifted((a - 1) / 2),
                              S::t_pow((b - 1) / 2)});
      CHECK(blk.det() == S::t_pow((a + b) / 2));
      check_same(gram(blk), SeriesMatrix<C>::diagonal({S::t_pow(a), S::t_pow(b)}));
    }
  for (long a = -4; a <= 4; ++a) {
    SeriesMatrix<C> blk(2, {S::monomial(C::from_rational(1, 2), a), S::constant(C::imag_unit()),
                            S::monomial(C::imag_unit() * C::from_rational(1, 2), a), S::one()});
    CHECK(blk.det() == S::t_pow(a));
  }
}
