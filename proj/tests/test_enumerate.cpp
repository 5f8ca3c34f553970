#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace testing;

namespace {

// Every monomial pattern of size n with exponents in [-bound, bound], units 1.
std::vector<AffinePermutation> all_patterns(int n, int bound) {
  std::vector<AffinePermutation> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<long> c(static_cast<std::size_t>(n), -bound);
    while (true) {
      out.push_back({Permutation(p), c});
      int k = 0;
      while (k < n && c[static_cast<std::size_t>(k)] == bound) c[static_cast<std::size_t>(k++)] = -bound;
      if (k == n) break;
      ++c[static_cast<std::size_t>(k)];
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<EnumItem> stream_all(const EnumSpec& spec) {
  IndexingSetStream s(spec);
  std::vector<EnumItem> out;
  while (auto it = s.next()) out.push_back(*it);
  return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
  auto one = enumerate_all({1, 2, EnumSet::eSymAPM});
  REQUIRE(one.size() == 3);
  CHECK(one[0].w.shifts == std::vector<long>{-2});
  CHECK(one[1].w.shifts == std::vector<long>{0});
  CHECK(one[2].w.shifts == std::vector<long>{2});
  auto skew = enumerate_all({2, 1, EnumSet::SkewAPM});
  REQUIRE(skew.size() == 3);
  for (long k = -1; k <= 1; ++k) {
    auto m = decorate<CoeffExact>(skew[static_cast<std::size_t>(k + 1)], EnumSet::SkewAPM).to_matrix();
    check_same(m, MatrixExact(2, {SeriesExact(), SeriesExact::t_pow(k), -SeriesExact::t_pow(k), SeriesExact()}));
  }
  CHECK(enumerate_all({2, 1, EnumSet::eSymAPM}).size() == 8);
}

TEST_CASE("counts match a brute-force filter over all monomial patterns") {
  for (int n = 1; n <= 4; ++n) {
    for (int bound = 0; bound <= (n <= 3 ? 2 : 1); ++bound) {
      std::set<AffinePermutation> sym, esym, skew, fpf, isym_fixed, isym_free;
      for (const auto& w : all_patterns(n, bound)) {
        auto cls = classify_membership(DecoratedMonomial<CoeffExact>::pure(w));
        if (cls.count(ApmClass::SymAPM)) sym.insert(w);
        if (cls.count(ApmClass::eSymAPM)) esym.insert(w);
        if (cls.count(ApmClass::FixedPointFree)) fpf.insert(w);
        if (cls.count(ApmClass::FixedPointFree)) skew.insert(w);
        if (cls.count(ApmClass::SymAPM) && w.shift_sum() == 0) {
          (w.bar.fixed_points().empty() ? isym_free : isym_fixed).insert(w);
        }
      }
      INFO("n = " << n << ", bound = " << bound);
      CHECK(enumerate_all({n, bound, EnumSet::SymAPM}).size() == sym.size());
      CHECK(enumerate_all({n, bound, EnumSet::eSymAPM}).size() == esym.size());
      CHECK(enumerate_all({n, bound, EnumSet::FpfInvolution}).size() == fpf.size());
      CHECK(enumerate_all({n, bound, EnumSet::SkewAPM}).size() == skew.size());
      CHECK(enumerate_all({n, bound, EnumSet::iSymAPM}).size() == isym_fixed.size() + 2 * isym_free.size());
    }
  }
}

TEST_CASE("every emitted element is distinct, a member, and in order") {
  for (EnumSet set : {EnumSet::SymAPM, EnumSet::eSymAPM, EnumSet::iSymAPM, EnumSet::SkewAPM}) {
    for (int n = 1; n <= 4; ++n) {
      auto items = enumerate_all({n, 1, set});
      std::set<std::pair<AffinePermutation, int>> seen;
      for (std::size_t k = 0; k < items.size(); ++k) {
        const auto& it = items[k];
        CHECK(seen.insert({it.w, static_cast<int>(it.sign)}).second);
        auto cls = classify_membership(decorate<CoeffExact>(it, set));
        switch (set) {
          case EnumSet::SymAPM: CHECK(cls.count(ApmClass::SymAPM)); break;
          case EnumSet::eSymAPM: CHECK(cls.count(ApmClass::eSymAPM)); break;
          case EnumSet::iSymAPM:
            CHECK((cls.count(ApmClass::iSymAPM_case_i) + cls.count(ApmClass::iSymAPM_case_ii)) == 1);
            break;
          default: CHECK(cls.count(ApmClass::SkewAPM)); break;
        }
        if (k > 0) {
          const auto& prev = items[k - 1];
          auto key = [](const EnumItem& e) { return std::make_pair(e.w.bar.images(), e.w.shifts); };
          CHECK(key(prev) <= key(it));
        }
      }
    }
  }
}

TEST_CASE("streams are deterministic") {
  EnumSpec spec{4, 2, EnumSet::iSymAPM};
  auto a = stream_all(spec);
  auto b = stream_all(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].w == b[k].w);
    CHECK(a[k].sign == b[k].sign);
  }
  CHECK(a.size() == enumerate_all(spec).size());
}

TEST_CASE("involution list") {
  std::size_t counts[] = {1, 2, 4, 10, 26, 76};
  for (int n = 1; n <= 6; ++n) {
    auto inv = involutions(n);
    CHECK(inv.size() == counts[n - 1]);
    CHECK(std::is_sorted(inv.begin(), inv.end(), [](const auto& x, const auto& y) { return x.images() < y.images(); }));
  }
  CHECK(parse_enum_set("eSymAPM") == EnumSet::eSymAPM);
  CHECK(to_string(EnumSet::SkewAPM) == "SkewAPM");
  CHECK(code_of([] { (void)parse_enum_set("nope"); }) == ErrorCode::ParseError);
}
