// affflag: classify orbits on the affine flag variety, build the representatives
// g_w, check their defining identities, enumerate the indexing sets and emit
// random test instances.
//
// Exit codes: 0 verified, 1 usage or precondition failure, 2 residual above
// tolerance (or a batch line whose canonical form differs from "expected").

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "affflag/enumerate.hpp"
#include "affflag/json_io.hpp"
#include "affflag/orbits_on.hpp"
#include "affflag/orbits_so.hpp"
#include "affflag/orbits_sp.hpp"

namespace {

using namespace affflag;
using nlohmann::json;
namespace aj = affflag::json;

enum Exit { kOk = 0, kUsage = 1, kResidual = 2 };

enum class Group { O, SO, Sp };

Group parse_group(const std::string& s) {
  if (s == "O") return Group::O;
  if (s == "SO") return Group::SO;
  if (s == "Sp") return Group::Sp;
  raise(ErrorCode::ParseError, "group must be O, SO or Sp, got '" + s + "'");
}

std::string group_name(Group g) {
  switch (g) {
    case Group::O: return "O";
    case Group::SO: return "SO";
    case Group::Sp: return "Sp";
  }
  return "?";
}

struct RunConfig {
  std::string backend;  // empty: per-command default
  int precision = 32;
  double tolerance = 1e-9;
  double residual_tolerance = 1e-8;
  std::uint64_t seed = 1;
};

void apply(const RunConfig& cfg) {
  if (cfg.precision < 8) raise(ErrorCode::ParseError, "--prec must be at least 8");
  if (!(cfg.tolerance > 0)) raise(ErrorCode::ParseError, "--tol must be positive");
  if (!(cfg.residual_tolerance > 0)) raise(ErrorCode::ParseError, "--residual-tol must be positive");
  default_terms() = cfg.precision;
  approx_config().zero_tol = cfg.tolerance;
}

template <class F>
int with_backend(const RunConfig& cfg, const std::string& fallback, F&& f) {
  std::string b = cfg.backend.empty() ? fallback : cfg.backend;
  if (b == "exact") return f.template operator()<CoeffExact>();
  if (b == "approx") return f.template operator()<CoeffApprox>();
  raise(ErrorCode::ParseError, "backend must be exact or approx, got '" + b + "'");
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// A whole-document JSON value, or one value per non-empty line.
std::vector<json> read_documents(const std::string& path) {
  std::string text = read_input(path);
  json whole = json::parse(text, nullptr, false);
  if (!whole.is_discarded()) return {whole};
  std::vector<json> docs;
  std::istringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) raise(ErrorCode::ParseError, path + ":" + std::to_string(number) + ": not JSON");
    docs.push_back(std::move(j));
  }
  return docs;
}

std::string describe(const AffinePermutation& w, Sign s) {
  std::string out = to_string(w);
  if (s != Sign::None) out += " sign " + std::string(to_string(s));
  return out;
}

json encode_w(const AffinePermutation& w, Sign s) {
  json j = aj::encode(w);
  j["sign"] = std::string(to_string(s));
  return j;
}

/// Verdict on a difference that should vanish.
struct Check {
  double residual = 0.0;
  long residual_ord = kExactPrec;
  long precision = kExactPrec;
  bool ok = false;
};

template <Coefficient C>
Check check_zero(const SeriesMatrix<C>& d, double tol) {
  Check c;
  c.residual = residual(d);
  c.residual_ord = residual_ord(d);
  c.precision = d.precision();
  c.ok = C::is_exact ? c.residual == 0.0 : c.residual <= tol;
  return c;
}

json encode(const Check& c) {
  json j = {{"residual", c.residual}, {"verified", c.ok}};
  j["residual_ord"] = c.residual_ord >= kExactPrec ? json(nullptr) : json(c.residual_ord);
  j["precision"] = c.precision >= kExactPrec ? json(nullptr) : json(c.precision);
  return j;
}

std::string describe(const Check& c) {
  std::ostringstream out;
  out << (c.ok ? "verified" : "NOT verified") << ", residual " << c.residual;
  if (c.residual_ord < kExactPrec) out << " at ord " << c.residual_ord;
  if (c.precision < kExactPrec) out << ", to O(t^" << c.precision << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Group dispatch

template <Coefficient C>
SeriesMatrix<C> gram(Group group, const SeriesMatrix<C>& g) {
  return group == Group::Sp ? gram_skew(g) : affflag::gram(g);
}

template <Coefficient C>
struct Classified {
  AffinePermutation w;
  Sign sign = Sign::None;
  DecoratedMonomial<C> canon;
  SeriesMatrix<C> witness;
};

template <Coefficient C>
Classified<C> reduce(Group group, const SeriesMatrix<C>& h) {
  switch (group) {
    case Group::O: {
      auto r = reduce_symmetric(h, false);
      return {r.canon.affine(), Sign::None, r.canon, r.witness};
    }
    case Group::SO: {
      auto r = reduce_symmetric_sl(h, false);
      return {r.canon.w, r.canon.sign, r.canon.form, r.witness};
    }
    case Group::Sp: {
      auto r = reduce_skew(h, false);
      return {r.canon.w, Sign::None, r.canon.form, r.witness};
    }
  }
  raise(ErrorCode::ParseError, "unknown group");
}

template <Coefficient C>
Classified<C> classify_g(Group group, const SeriesMatrix<C>& g) {
  switch (group) {
    case Group::O: {
      auto r = classify_On(g, false);
      return {r.canon.affine(), Sign::None, r.canon, r.witness};
    }
    case Group::SO: {
      auto r = classify_SOn(g, false);
      return {r.canon.w, r.canon.sign, r.canon.form, r.witness};
    }
    case Group::Sp: {
      auto r = classify_Sp(g, false);
      return {r.canon.w, Sign::None, r.canon.form, r.witness};
    }
  }
  raise(ErrorCode::ParseError, "unknown group");
}

/// The form a representative of (w, sign) must satisfy: g^T g or g^T J g equals it.
template <Coefficient C>
SeriesMatrix<C> target_form(Group group, const AffinePermutation& w, Sign sign) {
  switch (group) {
    case Group::O: {
      auto cls = classify_membership(DecoratedMonomial<C>::pure(w));
      if (!cls.count(ApmClass::eSymAPM)) raise(ErrorCode::NotESymAPM, to_string(w) + " is not in eSymAPM");
      return to_matrix<C>(w);
    }
    case Group::SO: return build_h_so<C>(w, sign).to_matrix();
    case Group::Sp: return h_sk<C>(w).to_matrix();
  }
  raise(ErrorCode::ParseError, "unknown group");
}

template <Coefficient C>
SeriesMatrix<C> representative(Group group, const AffinePermutation& w, Sign sign) {
  switch (group) {
    case Group::O: return build_gw_On<C>(w);
    case Group::SO: return build_gw_SOn<C>(w, sign);
    case Group::Sp: return build_gw_Sp<C>(w);
  }
  raise(ErrorCode::ParseError, "unknown group");
}

// ---------------------------------------------------------------------------
// Commands

struct ClassifyArgs {
  std::string group;
  std::string in;
  std::string from_g;
  bool no_witness = false;
};

template <Coefficient C>
int cmd_classify(const ClassifyArgs& a, const RunConfig& cfg) {
  Group group = parse_group(a.group);
  if (a.in.empty() == a.from_g.empty()) raise(ErrorCode::ParseError, "give exactly one of --in and --from-g");
  bool input_is_g = !a.from_g.empty();
  std::vector<json> docs = read_documents(input_is_g ? a.from_g : a.in);

  int total = 0, verified = 0, expected = 0, matched = 0, failed = 0;
  std::string last_summary;
  for (const json& doc : docs) {
    ++total;
    try {
      bool is_g = input_is_g;
      const json* mat = &doc;
      if (doc.is_object() && doc.contains("g")) {
        mat = &doc.at("g");
        is_g = true;
      } else if (doc.is_object() && doc.contains("h")) {
        mat = &doc.at("h");
        is_g = false;
      }
      SeriesMatrix<C> m = aj::decode_matrix<C>(*mat);
      SeriesMatrix<C> h = is_g ? gram(group, m) : m;
      Classified<C> r = is_g ? classify_g(group, m) : reduce(group, h);
      Check chk = check_zero(SeriesMatrix<C>(congruence(r.witness, h) - r.canon.to_matrix()), cfg.residual_tolerance);

      json out = {{"group", group_name(group)}, {"w", encode_w(r.w, r.sign)}, {"canon", aj::encode(r.canon)}};
      out["verification"] = encode(chk);
      if (!a.no_witness) out["witness"] = aj::encode(r.witness);
      if (doc.is_object() && doc.contains("expected")) {
        const json& e = doc.at("expected");
        AffinePermutation ew = aj::decode_affine(e);
        Sign es = e.is_object() && e.contains("sign") ? parse_sign(e.at("sign").get<std::string>()) : Sign::None;
        bool match = ew == r.w && es == r.sign;
        out["match"] = match;
        ++expected;
        if (match) ++matched;
      }
      std::cout << out.dump() << "\n";
      if (chk.ok) ++verified;
      last_summary = describe(r.w, r.sign) + ": " + describe(chk);
    } catch (const std::exception& e) {
      ++failed;
      std::cout << json{{"group", group_name(group)}, {"error", e.what()}}.dump() << "\n";
      std::cerr << "line " << total << ": " << e.what() << "\n";
    }
  }
  if (total == 1 && failed == 0) std::cerr << last_summary << "\n";
  if (total > 1 || expected > 0) {
    std::cerr << verified << "/" << total << " verified";
    if (expected > 0) std::cerr << ", " << matched << "/" << expected << " matches";
    std::cerr << "\n";
  }
  if (failed > 0) return kUsage;
  if (verified < total || matched < expected) return kResidual;
  return kOk;
}

struct RepArgs {
  std::string group;
  std::string w;
  std::string sign;
};

template <Coefficient C>
int cmd_rep(const RepArgs& a, const RunConfig& cfg) {
  Group group = parse_group(a.group);
  AffinePermutation w = parse_affine_permutation(a.w);
  Sign sign = parse_sign(a.sign);
  SeriesMatrix<C> g = representative<C>(group, w, sign);
  Check chk = check_zero(SeriesMatrix<C>(gram(group, g) - target_form<C>(group, w, sign)), cfg.residual_tolerance);
  json out = {{"group", group_name(group)}, {"w", encode_w(w, sign)}, {"g", aj::encode(g)}};
  std::cout << out.dump() << "\n";
  std::cerr << "g_w for " << describe(w, sign) << ": " << describe(chk) << "\n";
  return chk.ok ? kOk : kResidual;
}

struct VerifyArgs {
  std::string group;
  std::string w;
  std::string sign;
  std::string g;
};

template <Coefficient C>
int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
  Group group = parse_group(a.group);
  AffinePermutation w = parse_affine_permutation(a.w);
  Sign sign = parse_sign(a.sign);
  SeriesMatrix<C> g;
  if (a.g.empty()) {
    g = representative<C>(group, w, sign);
  } else {
    std::vector<json> docs = read_documents(a.g);
    if (docs.size() != 1) raise(ErrorCode::ParseError, "--g must hold one matrix");
    const json& d = docs.front();
    g = aj::decode_matrix<C>(d.is_object() && d.contains("g") ? d.at("g") : d);
  }
  if (g.n() != w.n()) raise(ErrorCode::DimensionMismatch, "g and w have different dimensions");
  Check chk = check_zero(SeriesMatrix<C>(gram(group, g) - target_form<C>(group, w, sign)), cfg.residual_tolerance);
  json out = {{"group", group_name(group)}, {"w", encode_w(w, sign)}};
  out["verification"] = encode(chk);
  std::cout << out.dump() << "\n";
  std::cerr << (group == Group::Sp ? "g^T J g" : "g^T g") << " against " << describe(w, sign) << ": " << describe(chk)
            << "\n";
  return chk.ok ? kOk : kResidual;
}

struct EnumArgs {
  std::string set = "eSymAPM";
  int n = 2;
  int bound = 1;
  bool count_only = false;
};

int cmd_enum(const EnumArgs& a) {
  if (a.n < 1) raise(ErrorCode::ParseError, "--n must be at least 1");
  if (a.bound < 0) raise(ErrorCode::ParseError, "--bound must be non-negative");
  EnumSet set = parse_enum_set(a.set);
  IndexingSetStream stream({a.n, a.bound, set});
  long count = 0;
  while (auto item = stream.next()) {
    ++count;
    if (a.count_only) continue;
    json out = aj::encode(decorate<CoeffExact>(*item, set));
    out["sign"] = std::string(to_string(item->sign));
    std::cout << out.dump() << "\n";
  }
  if (a.count_only) std::cout << json{{"set", std::string(to_string(set))}, {"n", a.n}, {"bound", a.bound}, {"count", count}}.dump() << "\n";
  std::cerr << count << " elements of " << to_string(set) << " (n = " << a.n << ", |exps| <= " << a.bound << ")\n";
  return kOk;
}

struct RandomArgs {
  std::string group;
  int n = 3;
  int count = 10;
  int bound = 1;
};

/// Coefficientwise rounding of an exact matrix into the target backend.
template <Coefficient C>
SeriesMatrix<C> convert(const SeriesMatrix<CoeffExact>& m) {
  if constexpr (C::is_exact) {
    return m;
  } else {
    SeriesMatrix<C> out(m.n());
    for (int i = 0; i < m.n(); ++i)
      for (int j = 0; j < m.n(); ++j) {
        const auto& x = m(i, j);
        if (x.is_exact_zero()) continue;
        std::vector<C> cs;
        for (const auto& c : x.coeffs()) cs.push_back(C(c.to_complex()));
        cs.resize(static_cast<std::size_t>(x.prec() - x.val()), C::zero());
        out(i, j) = LaurentSeries<C>(x.val(), std::move(cs));
      }
    return out;
  }
}

/// Instances are built in exact arithmetic and rounded once on output.
template <Coefficient C>
int cmd_random(const RandomArgs& a, const RunConfig& cfg) {
  using E = CoeffExact;
  Group group = parse_group(a.group);
  if (a.n < 1 || a.count < 0 || a.bound < 0) raise(ErrorCode::ParseError, "--n, --count and --bound must be non-negative");
  if (group == Group::Sp && a.n % 2 != 0) raise(ErrorCode::DimensionMismatch, "symplectic case needs even --n");
  EnumSet set = group == Group::O ? EnumSet::eSymAPM : group == Group::SO ? EnumSet::iSymAPM : EnumSet::SkewAPM;
  std::vector<EnumItem> pool = enumerate_all({a.n, a.bound, set});
  if (pool.empty()) raise(ErrorCode::ParseError, "the indexing set is empty for these bounds");
  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < a.count; ++t) {
    const EnumItem& it = pool[rng() % pool.size()];
    SeriesMatrix<E> k;
    SeriesMatrix<E> b;
    switch (group) {
      case Group::O:
        k = random_orthogonal<E>(a.n, rng);
        b = random_iwahori<E>(a.n, rng);
        break;
      case Group::SO:
        k = random_special_orthogonal<E>(a.n, rng);
        b = random_iwahori<E>(a.n, rng, {}, true);
        break;
      case Group::Sp:
        k = random_symplectic<E>(a.n / 2, rng);
        b = random_iwahori<E>(a.n, rng);
        break;
    }
    SeriesMatrix<C> g = convert<C>(SeriesMatrix<E>(k * representative<E>(group, it.w, it.sign) * b));
    json out = {{"group", group_name(group)}, {"expected", encode_w(it.w, it.sign)}, {"g", aj::encode(g)}};
    std::cout << out.dump() << "\n";
  }
  std::cerr << a.count << " instances k g_w b of " << to_string(set) << " (n = " << a.n << ", seed " << cfg.seed << ")\n";
  return kOk;
}

void add_config(CLI::App* sub, RunConfig& cfg, bool seed) {
  sub->add_option("--backend", cfg.backend, "exact or approx");
  sub->add_option("--prec", cfg.precision, "stored terms per series (>= 8)");
  sub->add_option("--tol", cfg.tolerance, "approx zero test |x| < tol");
  sub->add_option("--residual-tol", cfg.residual_tolerance, "largest accepted residual coefficient (approx)");
  if (seed) sub->add_option("--seed", cfg.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbits of O_n, SO_n and Sp_2n on the affine flag variety of GL_n"};
  app.require_subcommand(1);
  RunConfig cfg;

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "canonical form of a symmetric or skew h, or of g via g^T g / g^T J g");
  classify->add_option("--group", ca.group, "O, SO or Sp")->required();
  classify->add_option("--in", ca.in, "h as JSON ('-' for stdin; JSON lines allowed)");
  classify->add_option("--from-g", ca.from_g, "g as JSON ('-' for stdin; JSON lines allowed)");
  classify->add_flag("--no-witness", ca.no_witness, "omit the witness matrix from the output");
  add_config(classify, cfg, false);

  RepArgs ra;
  auto* rep = app.add_subcommand("rep", "emit the representative g_w");
  rep->add_option("--group", ra.group, "O, SO or Sp")->required();
  rep->add_option("--w", ra.w, "\"CYCLES ; SHIFTS\", e.g. \"(2 4) ; 4,-2,-5,-2,3\"")->required();
  rep->add_option("--sign", ra.sign, "+ or - (SO, fixed-point-free w)");
  add_config(rep, cfg, false);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check g^T g = w, g^T g = h_w^{+-} or g^T J g = h^sk_w");
  verify->add_option("--group", va.group, "O, SO or Sp")->required();
  verify->add_option("--w", va.w, "\"CYCLES ; SHIFTS\"")->required();
  verify->add_option("--sign", va.sign, "+ or - (SO, fixed-point-free w)");
  verify->add_option("--g", va.g, "g as JSON (default: the built g_w)");
  add_config(verify, cfg, false);

  EnumArgs ea;
  auto* en = app.add_subcommand("enum", "list a bounded indexing set");
  en->add_option("--set", ea.set, "SymAPM, eSymAPM, iSymAPM, SkewAPM or FpfInvolution");
  en->add_option("--n", ea.n, "dimension");
  en->add_option("--bound", ea.bound, "largest |shift|");
  en->add_flag("--count-only", ea.count_only, "print only the count");

  RandomArgs rda;
  auto* rnd = app.add_subcommand("random", "emit {g, expected} lines with g = k g_w b");
  rnd->add_option("--group", rda.group, "O, SO or Sp")->required();
  rnd->add_option("--n", rda.n, "dimension");
  rnd->add_option("--count", rda.count, "number of instances");
  rnd->add_option("--bound", rda.bound, "largest |shift| of w");
  add_config(rnd, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*en) return cmd_enum(ea);
    apply(cfg);
    if (*classify) return with_backend(cfg, "approx", [&]<class C>() { return cmd_classify<C>(ca, cfg); });
    if (*rep) return with_backend(cfg, "exact", [&]<class C>() { return cmd_rep<C>(ra, cfg); });
    if (*verify) return with_backend(cfg, "exact", [&]<class C>() { return cmd_verify<C>(va, cfg); });
    if (*rnd) return with_backend(cfg, "approx", [&]<class C>() { return cmd_random<C>(rda, cfg); });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
