#pragma once

// Bounded enumeration of the indexing sets, as a deterministic stream.

#include <optional>
#include <string>
#include <vector>

#include "affflag/affperm.hpp"

namespace affflag {

enum class EnumSet { SymAPM, eSymAPM, iSymAPM, SkewAPM, FpfInvolution };

std::string_view to_string(EnumSet s);
EnumSet parse_enum_set(const std::string& text);

struct EnumSpec {
  int n = 1;
  int max_abs_exp = 0;
  EnumSet set = EnumSet::eSymAPM;
};

/// One element: the underlying twisted involution and, for fixed-point-free
/// iSymAPM patterns, the decoration sign.
struct EnumItem {
  AffinePermutation w;
  Sign sign = Sign::None;
};

/// All involutions of {0, ..., n-1}, sorted by one-line form.
std::vector<Permutation> involutions(int n);

/// Emits the members of an indexing set ordered by (involution one-line form,
/// shift vector); the fixed-point-free iSymAPM patterns come as + then -.
class IndexingSetStream {
 public:
  explicit IndexingSetStream(EnumSpec spec);
  std::optional<EnumItem> next();

 private:
  bool load_involution();
  bool accepts(const std::vector<long>& shifts) const;
  bool advance_shifts();

  EnumSpec spec_;
  std::vector<Permutation> invs_;
  std::size_t inv_index_ = 0;
  std::vector<int> orbit_of_;      // index -> orbit number
  std::vector<long> orbit_vals_;   // current shift of each orbit
  bool loaded_ = false;
  bool pending_minus_ = false;
  EnumItem last_;
};

std::vector<EnumItem> enumerate_all(const EnumSpec& spec);

/// The decorated monomial an item stands for in its indexing set.
template <Coefficient C>
DecoratedMonomial<C> decorate(const EnumItem& item, EnumSet set) {
  DecoratedMonomial<C> d = DecoratedMonomial<C>::pure(item.w);
  int n = item.w.n();
  const Permutation& p = item.w.bar;
  if (set == EnumSet::iSymAPM) {
    for (int j = 0; j < n; ++j)
      if (p(j) != j) d.units[static_cast<std::size_t>(j)] = C::imag_unit();
    if (item.sign == Sign::Minus) {
      d.units[0] = -d.units[0];
      d.units[static_cast<std::size_t>(p(0))] = -d.units[static_cast<std::size_t>(p(0))];
    }
  } else if (set == EnumSet::SkewAPM) {
    for (int j = 0; j < n; ++j)
      if (p(j) > j) d.units[static_cast<std::size_t>(j)] = -C::one();
  }
  return d;
}

}  // namespace affflag
