#include <algorithm>

#include "support.hpp"

using namespace testing;

namespace {

// All fixed-point-free involutions of {0, ..., m-1}, by direct pairing.
void pairings(std::vector<int>& img, std::vector<Permutation>& out) {
  auto it = std::find(img.begin(), img.end(), -1);
  if (it == img.end()) {
    out.emplace_back(img);
    return;
  }
  int a = static_cast<int>(it - img.begin());
  for (int b = a + 1; b < static_cast<int>(img.size()); ++b) {
    if (img[static_cast<std::size_t>(b)] != -1) continue;
    img[static_cast<std::size_t>(a)] = b;
    img[static_cast<std::size_t>(b)] = a;
    pairings(img, out);
    img[static_cast<std::size_t>(a)] = -1;
    img[static_cast<std::size_t>(b)] = -1;
  }
}

std::vector<Permutation> all_fpf(int m) {
  std::vector<int> img(static_cast<std::size_t>(m), -1);
  std::vector<Permutation> out;
  pairings(img, out);
  return out;
}

template <Coefficient C>
void check_reduction(const SeriesMatrix<C>& h, const ReductionSp<C>& r) {
  CHECK(r.witness.member(MatrixClass::Iwahori));
  check_same(congruence(r.witness, h), r.canon.form.to_matrix());
  const auto& f = r.canon.form;
  for (int j = 0; j < f.n(); ++j) {
    if (f.perm(j) < j) CHECK(f.units[static_cast<std::size_t>(j)].is_one());
    if (f.perm(j) > j) CHECK((-f.units[static_cast<std::size_t>(j)]).is_one());
  }
}

}  // namespace

TEST_CASE_TEMPLATE("the form J", C, CoeffExact, CoeffApprox) {
  check_same(sp_form<C>(1), mat<C>(2, {"0", "1", "-1", "0"}));
  for (int n = 1; n <= 3; ++n) {
    auto j = sp_form<C>(n);
    check_same(SeriesMatrix<C>(j.transpose() * j), SeriesMatrix<C>::identity(2 * n));
    check_same(j.transpose(), -j);
    AffinePermutation wj{w_J(n), std::vector<long>(static_cast<std::size_t>(2 * n), 0)};
    check_same(h_sk<C>(wj).to_matrix(), j);
  }
}

TEST_CASE("sigma_w examples") {
  CHECK(sigma_w(w_J(3)).is_identity());
  Permutation fpf = Permutation::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}});
  CHECK(sigma_w(fpf) == Permutation::from_cycles(6, {{2, 4}, {3, 5}}));
  CHECK(code_of([] { (void)sigma_w(Permutation::from_cycles(4, {{1, 2}})); }) == ErrorCode::NotFpfInvolution);
}

TEST_CASE("sigma_w conjugates w_J to every fixed-point-free involution") {
  std::size_t counts[] = {1, 3, 15, 105, 945};
  for (int n = 1; n <= 5; ++n) {
    auto all = all_fpf(2 * n);
    CHECK(all.size() == counts[n - 1]);
    for (const auto& p : all) {
      Permutation s = sigma_w(p);
      CHECK(s.inverse() * w_J(n) * s == p);
    }
  }
}

TEST_CASE_TEMPLATE("golden symplectic representative", C, CoeffExact, CoeffApprox) {
  AffinePermutation w = apm("(1 2)(3 4)(5 6) ; 1,1,-3,-3,2,2");
  SpData d = sp_data(w);
  CHECK(d.sigma == Permutation::from_cycles(6, {{2, 4}, {3, 5}}));
  CHECK(d.s == Permutation::from_cycles(6, {{3, 4}}));
  CHECK(d.sqrt_c == std::vector<long>{1, 0, -3, 0, 2, 0});
  auto g = build_gw_Sp<C>(w);
  check_same(g, mat<C>(6, {"t", "0", "0", "0", "0", "0",
                           "0", "0", "1", "0", "0", "0",
                           "0", "0", "0", "0", "t^2", "0",
                           "0", "1", "0", "0", "0", "0",
                           "0", "0", "0", "t^-3", "0", "0",
                           "0", "0", "0", "0", "0", "1"}));
  auto sj = to_matrix<C>(AffinePermutation{d.sigma, std::vector<long>(6, 0)});
  check_same(SeriesMatrix<C>(sj.transpose() * sp_form<C>(3) * sj),
             mat<C>(6, {"0", "1", "0", "0", "0", "0",
                        "-1", "0", "0", "0", "0", "0",
                        "0", "0", "0", "-1", "0", "0",
                        "0", "0", "1", "0", "0", "0",
                        "0", "0", "0", "0", "0", "1",
                        "0", "0", "0", "0", "-1", "0"}));
  auto expected = mat<C>(6, {"0", "t", "0", "0", "0", "0",
                             "-t", "0", "0", "0", "0", "0",
                             "0", "0", "0", "t^-3", "0", "0",
                             "0", "0", "-t^-3", "0", "0", "0",
                             "0", "0", "0", "0", "0", "t^2",
                             "0", "0", "0", "0", "-t^2", "0"});
  check_same(gram_skew(g), expected);
  check_same(h_sk<C>(w).to_matrix(), expected);
  check_same(build_gw_Sp<C>(AffinePermutation{w_J(3), std::vector<long>(6, 0)}), SeriesMatrix<C>::identity(6));
}

TEST_CASE_TEMPLATE("g_w^T J g_w = h^sk_w over the enumeration", C, CoeffExact, CoeffApprox) {
  for (int m : {2, 4, 6}) {
    long bound = m == 6 ? 1 : 2;
    for (const auto& it : enumerate_all({m, static_cast<int>(bound), EnumSet::SkewAPM})) {
      INFO(to_string(it.w));
      check_same(gram_skew(build_gw_Sp<C>(it.w)), h_sk<C>(it.w).to_matrix());
    }
  }
}

TEST_CASE_TEMPLATE("reduce_skew examples", C, CoeffExact, CoeffApprox) {
  auto r = reduce_skew(sp_form<C>(2));
  CHECK(r.canon.w == AffinePermutation{w_J(2), {0, 0, 0, 0}});
  auto ex = mat<C>(4, {"0", "t^2", "0", "0", "-t^2", "0", "0", "0", "0", "0", "0", "t^-3", "0", "0", "-t^-3", "0"});
  auto e = reduce_skew(ex);
  check_same(e.canon.form.to_matrix(), ex);
  check_same(e.witness, SeriesMatrix<C>::identity(4));
  CHECK(code_of([] { (void)reduce_skew(SeriesMatrix<C>::identity(2)); }) == ErrorCode::NotSkew);
  CHECK(code_of([] { (void)gram_skew(SeriesMatrix<C>::identity(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE_TEMPLATE("planted skew forms are recovered", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(71);
  for (int m : {2, 4, 6}) {
    auto items = enumerate_all({m, 1, EnumSet::SkewAPM});
    for (int k = 0; k < 10; ++k) {
      const auto& it = items[rng() % items.size()];
      auto h = congruence(random_iwahori<C>(m, rng), h_sk<C>(it.w).to_matrix());
      auto r = reduce_skew(h);
      INFO(to_string(it.w));
      CHECK(r.canon.w == it.w);
      check_reduction(h, r);
    }
  }
}

TEST_CASE_TEMPLATE("classify_Sp round trip and invariance", C, CoeffExact, CoeffApprox) {
  CHECK(classify_Sp(SeriesMatrix<C>::identity(4)).canon.w == AffinePermutation{w_J(2), {0, 0, 0, 0}});
  auto items = enumerate_all({4, 1, EnumSet::SkewAPM});
  for (const auto& it : items) CHECK(classify_Sp(build_gw_Sp<C>(it.w), false).canon.w == it.w);
  std::mt19937_64 rng(72);
  for (int k = 0; k < 15; ++k) {
    const auto& it = items[rng() % items.size()];
    auto gw = build_gw_Sp<C>(it.w);
    auto kk = random_symplectic<C>(2, rng);
    auto b = random_iwahori<C>(4, rng);
    CHECK(classify_Sp(SeriesMatrix<C>(gw * b), false).canon.w == it.w);
    CHECK(classify_Sp(SeriesMatrix<C>(kk * gw * b), false).canon.w == it.w);
  }
}

TEST_CASE_TEMPLATE("g^T J g is skew for every g", C, CoeffExact, CoeffApprox) {
  std::mt19937_64 rng(73);
  for (int k = 0; k < 10; ++k) {
    auto g = random_matrix<C>(4, rng, {}, -1);
    SeriesMatrix<C> h = g.transpose() * sp_form<C>(2) * g;
    CHECK(h.member(MatrixClass::Skew));
  }
}
