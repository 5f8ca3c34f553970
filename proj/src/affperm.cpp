#include "affflag/affperm.hpp"

#include <algorithm>
#include <sstream>

namespace affflag {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int x : img_) {
    if (x < 0 || x >= n() || seen[static_cast<std::size_t>(x)]) raise(ErrorCode::ParseError, "not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) img[static_cast<std::size_t>(k)] = k;
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Permutation result = identity(n);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<int> img = identity(n).img_;
    const auto& cyc = *it;
    std::set<int> points;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k] - 1;
      int b = cyc[(k + 1) % cyc.size()] - 1;
      if (a < 0 || a >= n || b < 0 || b >= n) raise(ErrorCode::ParseError, "cycle point out of range");
      if (!points.insert(a).second) raise(ErrorCode::ParseError, "repeated point in a cycle");
      img[static_cast<std::size_t>(a)] = b;
    }
    result = Permutation(std::move(img)) * result;
  }
  return result;
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p = identity(n);
  std::swap(p.img_[static_cast<std::size_t>(a)], p.img_[static_cast<std::size_t>(b)]);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int k = 0; k < n(); ++k) inv[static_cast<std::size_t>(img_[static_cast<std::size_t>(k)])] = k;
  return Permutation(std::move(inv));
}

bool Permutation::is_involution() const {
  for (int k = 0; k < n(); ++k)
    if ((*this)((*this)(k)) != k) return false;
  return true;
}

bool Permutation::is_identity() const { return fixed_points().size() == img_.size(); }

std::vector<int> Permutation::fixed_points() const {
  std::vector<int> out;
  for (int k = 0; k < n(); ++k)
    if ((*this)(k) == k) out.push_back(k);
  return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(img_.size(), false);
  for (int k = 0; k < n(); ++k) {
    if (seen[static_cast<std::size_t>(k)] || (*this)(k) == k) continue;
    std::vector<int> cyc;
    for (int x = k; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

int Permutation::sign() const {
  int s = 1;
  for (const auto& c : cycles())
    if (c.size() % 2 == 0) s = -s;
  return s;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n()) raise(ErrorCode::DimensionMismatch, "permutations of different degree");
  std::vector<int> img(static_cast<std::size_t>(p.n()));
  for (int k = 0; k < p.n(); ++k) img[static_cast<std::size_t>(k)] = p(q(k));
  return Permutation(std::move(img));
}

std::string to_string(const Permutation& p) {
  auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& c : cycles) {
    out += "(";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += " ";
      out += std::to_string(c[k] + 1);
    }
    out += ")";
  }
  return out;
}

AffinePermutation AffinePermutation::identity(int n) {
  return {Permutation::identity(n), std::vector<long>(static_cast<std::size_t>(n), 0)};
}

AffinePermutation AffinePermutation::inverse() const {
  Permutation binv = bar.inverse();
  std::vector<long> c(shifts.size());
  for (int k = 0; k < n(); ++k) c[static_cast<std::size_t>(k)] = -shifts[static_cast<std::size_t>(binv(k))];
  return {binv, c};
}

AffinePermutation AffinePermutation::star() const {
  std::vector<long> c(shifts.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = -shifts[k];
  return {bar, c};
}

std::vector<long> AffinePermutation::window() const {
  std::vector<long> w(shifts.size());
  for (int k = 0; k < n(); ++k) w[static_cast<std::size_t>(k)] = apply(k + 1);
  return w;
}

long AffinePermutation::apply(long i) const {
  long nn = n();
  long r = ((i - 1) % nn + nn) % nn;  // 0-based residue
  long q = (i - 1 - r) / nn;
  return bar(static_cast<int>(r)) + 1 + nn * (shifts[static_cast<std::size_t>(r)] + q);
}

long AffinePermutation::shift_sum() const { return detail::sum(shifts); }

bool AffinePermutation::is_twisted_involution() const { return star() == inverse(); }

AffinePermutation operator*(const AffinePermutation& x, const AffinePermutation& y) {
  if (x.n() != y.n()) raise(ErrorCode::DimensionMismatch, "affine permutations of different degree");
  std::vector<long> c(y.shifts.size());
  for (int k = 0; k < y.n(); ++k) {
    c[static_cast<std::size_t>(k)] = x.shifts[static_cast<std::size_t>(y.bar(k))] + y.shifts[static_cast<std::size_t>(k)];
  }
  return {x.bar * y.bar, c};
}

std::string to_string(const AffinePermutation& w) {
  std::string out = to_string(w.bar) + " ; ";
  for (std::size_t k = 0; k < w.shifts.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(w.shifts[k]);
  }
  return out;
}

AffinePermutation parse_affine_permutation(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) raise(ErrorCode::ParseError, "expected 'CYCLES ; SHIFTS' in '" + text + "'");
  std::string cyc = text.substr(0, semi);
  std::string sh = text.substr(semi + 1);

  std::vector<long> shifts;
  std::string item;
  std::stringstream ss(sh);
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      shifts.push_back(std::stol(item, &used));
      if (used != item.size()) raise(ErrorCode::ParseError, "bad shift '" + item + "'");
    } catch (const std::logic_error&) {
      raise(ErrorCode::ParseError, "bad shift '" + item + "'");
    }
  }
  if (shifts.empty()) raise(ErrorCode::ParseError, "empty shift list");

  std::vector<std::vector<int>> cycles;
  std::vector<int> current;
  bool open = false;
  std::string number;
  auto flush = [&] {
    if (!number.empty()) {
      current.push_back(std::stoi(number));
      number.clear();
    }
  };
  for (char ch : cyc) {
    if (ch == '(') {
      if (open) raise(ErrorCode::ParseError, "nested '(' in cycles");
      open = true;
      current.clear();
    } else if (ch == ')') {
      if (!open) raise(ErrorCode::ParseError, "unmatched ')' in cycles");
      flush();
      if (current.size() > 1) cycles.push_back(current);
      open = false;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!open) raise(ErrorCode::ParseError, "cycle entry outside parentheses");
      number.push_back(ch);
    } else if (ch == ' ' || ch == ',' || ch == '\t') {
      flush();
    } else {
      raise(ErrorCode::ParseError, std::string("unexpected character '") + ch + "' in cycles");
    }
  }
  if (open) raise(ErrorCode::ParseError, "unclosed '(' in cycles");
  int n = static_cast<int>(shifts.size());
  return {Permutation::from_cycles(n, cycles), shifts};
}

std::string_view to_string(ApmClass c) {
  switch (c) {
    case ApmClass::SymAPM: return "SymAPM";
    case ApmClass::eSymAPM: return "eSymAPM";
    case ApmClass::iSymAPM_case_i: return "iSymAPM_case_i";
    case ApmClass::iSymAPM_case_ii: return "iSymAPM_case_ii";
    case ApmClass::SkewAPM: return "SkewAPM";
    case ApmClass::AffineWeyl: return "AffineWeyl";
    case ApmClass::FixedPointFree: return "FixedPointFree";
  }
  return "Unknown";
}

}  // namespace affflag
