#include "affflag/enumerate.hpp"

#include <algorithm>

namespace affflag {

std::string_view to_string(EnumSet s) {
  switch (s) {
    case EnumSet::SymAPM: return "SymAPM";
    case EnumSet::eSymAPM: return "eSymAPM";
    case EnumSet::iSymAPM: return "iSymAPM";
    case EnumSet::SkewAPM: return "SkewAPM";
    case EnumSet::FpfInvolution: return "FpfInvolution";
  }
  return "Unknown";
}

EnumSet parse_enum_set(const std::string& text) {
  for (EnumSet s : {EnumSet::SymAPM, EnumSet::eSymAPM, EnumSet::iSymAPM, EnumSet::SkewAPM, EnumSet::FpfInvolution}) {
    if (text == to_string(s)) return s;
  }
  raise(ErrorCode::ParseError, "unknown indexing set '" + text + "'");
}

namespace {

void extend(std::vector<int>& img, std::vector<Permutation>& out) {
  auto it = std::find(img.begin(), img.end(), -1);
  if (it == img.end()) {
    out.emplace_back(img);
    return;
  }
  int i = static_cast<int>(it - img.begin());
  img[static_cast<std::size_t>(i)] = i;
  extend(img, out);
  for (int j = i + 1; j < static_cast<int>(img.size()); ++j) {
    if (img[static_cast<std::size_t>(j)] != -1) continue;
    img[static_cast<std::size_t>(i)] = j;
    img[static_cast<std::size_t>(j)] = i;
    extend(img, out);
    img[static_cast<std::size_t>(j)] = -1;
  }
  img[static_cast<std::size_t>(i)] = -1;
}

}  // namespace

std::vector<Permutation> involutions(int n) {
  std::vector<Permutation> out;
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  extend(img, out);
  std::sort(out.begin(), out.end());
  return out;
}

IndexingSetStream::IndexingSetStream(EnumSpec spec) : spec_(spec) {
  if (spec_.n < 1) raise(ErrorCode::DimensionMismatch, "n must be at least 1");
  if (spec_.max_abs_exp < 0) raise(ErrorCode::ParseError, "bound must be non-negative");
  invs_ = involutions(spec_.n);
  if (spec_.set == EnumSet::SkewAPM || spec_.set == EnumSet::FpfInvolution) {
    std::erase_if(invs_, [](const Permutation& p) { return !p.fixed_points().empty(); });
  }
}

bool IndexingSetStream::load_involution() {
  while (inv_index_ < invs_.size()) {
    const Permutation& p = invs_[inv_index_];
    int n = p.n();
    orbit_of_.assign(static_cast<std::size_t>(n), -1);
    int orbits = 0;
    for (int k = 0; k < n; ++k) {
      if (orbit_of_[static_cast<std::size_t>(k)] >= 0) continue;
      orbit_of_[static_cast<std::size_t>(k)] = orbits;
      orbit_of_[static_cast<std::size_t>(p(k))] = orbits;
      ++orbits;
    }
    orbit_vals_.assign(static_cast<std::size_t>(orbits), -spec_.max_abs_exp);
    loaded_ = true;
    return true;
  }
  return false;
}

bool IndexingSetStream::advance_shifts() {
  for (std::size_t k = orbit_vals_.size(); k-- > 0;) {
    if (orbit_vals_[k] < spec_.max_abs_exp) {
      ++orbit_vals_[k];
      return true;
    }
    orbit_vals_[k] = -spec_.max_abs_exp;
  }
  return false;
}

bool IndexingSetStream::accepts(const std::vector<long>& shifts) const {
  long sum = 0;
  for (long c : shifts) sum += c;
  switch (spec_.set) {
    case EnumSet::eSymAPM: return sum % 2 == 0;
    case EnumSet::iSymAPM: return sum == 0;
    default: return true;
  }
}

std::optional<EnumItem> IndexingSetStream::next() {
  if (pending_minus_) {
    pending_minus_ = false;
    EnumItem minus = last_;
    minus.sign = Sign::Minus;
    return minus;
  }
  while (true) {
    if (!loaded_) {
      if (!load_involution()) return std::nullopt;
    } else if (!advance_shifts()) {
      ++inv_index_;
      loaded_ = false;
      continue;
    }
    // First visit after loading uses the initial shift vector; later visits advance it.
    const Permutation& p = invs_[inv_index_];
    std::vector<long> shifts(static_cast<std::size_t>(p.n()));
    for (int k = 0; k < p.n(); ++k) shifts[static_cast<std::size_t>(k)] = orbit_vals_[static_cast<std::size_t>(orbit_of_[static_cast<std::size_t>(k)])];
    if (!accepts(shifts)) continue;
    last_ = {AffinePermutation{p, shifts}, Sign::None};
    if (spec_.set == EnumSet::iSymAPM && p.fixed_points().empty()) {
      last_.sign = Sign::Plus;
      pending_minus_ = true;
    }
    return last_;
  }
}

std::vector<EnumItem> enumerate_all(const EnumSpec& spec) {
  std::vector<EnumItem> out;
  IndexingSetStream s(spec);
  while (auto item = s.next()) out.push_back(*item);
  return out;
}

}  // namespace affflag
