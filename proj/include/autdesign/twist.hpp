#pragma once

// Twisted designs D_π: the lines of PG(d,q) (or AG(3,q)) off a hyperplane
// (plane) X, together with the images L^π of the lines L inside X. Also the
// double-coset isomorphism test, the counting bound, and search-based
// providers of the auxiliary designs Δ₁, Δ₂.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "autdesign/canon.hpp"
#include "autdesign/design.hpp"
#include "autdesign/error.hpp"
#include "autdesign/geom.hpp"
#include "autdesign/perm.hpp"

namespace autd::twist {

using design::Block;
using design::Design;
using perm::Perm;
using perm::PermGroup;

enum class Ambient { Projective, Affine };

/// The ambient space with its distinguished flat X (last coordinate zero).
/// X-local indices follow ascending global ids.
class TwistSpace {
 public:
  TwistSpace(Ambient amb, int d, std::uint32_t q) : amb_(amb), d_(d) {
    auto pp = gf::prime_power(q);
    if (!pp) throw Error(Errc::InvalidSpec, std::to_string(q) + " is not a prime power");
    k_ = gf::make_field(pp->first, pp->second);
    std::vector<Block> lines;
    if (amb == Ambient::Projective) {
      if (d < 2) throw Error(Errc::InvalidSpec, "projective twists need d >= 2");
      ps_.emplace(k_, d);
      n_ = ps_->num_points();
      lines = ps_->all_lines();
      for (std::uint32_t x = 0; x < n_; ++x)
        if (ps_->coords(x)[d].is_zero()) x_points_.push_back(x);
    } else {
      if (d != 3) throw Error(Errc::InvalidSpec, "affine twists live in AG(3,q)");
      if (q <= 2) throw Error(Errc::InvalidSpec, "affine twists need q > 2");
      as_.emplace(k_, 3);
      n_ = as_->num_points();
      lines = as_->all_lines();
      for (std::uint32_t x = 0; x < n_; ++x)
        if (as_->vec(x)[2].is_zero()) x_points_.push_back(x);
    }
    x_local_.assign(n_, -1);
    for (std::size_t i = 0; i < x_points_.size(); ++i) x_local_[x_points_[i]] = static_cast<std::int32_t>(i);
    for (auto& l : lines) {
      const bool inside = std::all_of(l.begin(), l.end(), [&](std::uint32_t x) { return x_local_[x] >= 0; });
      (inside ? lines_in_x_ : lines_off_x_).push_back(std::move(l));
    }
  }

  Ambient ambient() const { return amb_; }
  int dim() const { return d_; }
  std::uint32_t q() const { return k_->size(); }
  const gf::FieldPtr& field() const { return k_; }
  std::uint32_t num_points() const { return n_; }
  const std::vector<std::uint32_t>& x_points() const { return x_points_; }
  std::int32_t x_local(std::uint32_t global) const { return x_local_[global]; }
  std::uint32_t x_size() const { return static_cast<std::uint32_t>(x_points_.size()); }
  const std::vector<Block>& lines_in_x() const { return lines_in_x_; }
  const std::vector<Block>& lines_off_x() const { return lines_off_x_; }
  const std::optional<geom::ProjectiveSpace>& projective() const { return ps_; }
  const std::optional<geom::AffineSpace>& affine() const { return as_; }

  Design classical() const {
    Design d{n_, lines_in_x_};
    d.blocks.insert(d.blocks.end(), lines_off_x_.begin(), lines_off_x_.end());
    return design::normalize(std::move(d));
  }

  /// PΓL(X) or AΓL(X) acting on X-local indices.
  std::vector<Perm> x_group_generators() const {
    std::vector<Perm> out;
    if (amb_ == Ambient::Projective) {
      geom::ProjectiveSpace sub(k_, d_ - 1);
      std::vector<std::uint32_t> to_sub(x_size()), from_sub(sub.num_points());
      for (std::uint32_t i = 0; i < x_size(); ++i) {
        auto c = ps_->coords(x_points_[i]);
        geom::Vec v(c.begin(), c.begin() + d_);
        to_sub[i] = sub.id_of(v);
        from_sub[to_sub[i]] = i;
      }
      for (const auto& g : geom::group_gens(geom::GroupKind::PGammaL, d_, k_)) {
        std::vector<std::uint32_t> img(x_size());
        for (std::uint32_t i = 0; i < x_size(); ++i) img[i] = from_sub[g[to_sub[i]]];
        out.emplace_back(std::move(img));
      }
    } else {
      geom::AffineSpace sub(k_, 2);
      std::vector<std::uint32_t> to_sub(x_size()), from_sub(sub.num_points());
      for (std::uint32_t i = 0; i < x_size(); ++i) {
        auto v = as_->vec(x_points_[i]);
        v.pop_back();
        to_sub[i] = sub.id_of(v);
        from_sub[to_sub[i]] = i;
      }
      for (const auto& g : geom::group_gens(geom::GroupKind::AGammaL, 2, k_)) {
        std::vector<std::uint32_t> img(x_size());
        for (std::uint32_t i = 0; i < x_size(); ++i) img[i] = from_sub[g[to_sub[i]]];
        out.emplace_back(std::move(img));
      }
    }
    return out;
  }
  PermGroup x_group() const { return PermGroup(x_size(), x_group_generators()); }

  /// X-local indices of an X-line.
  std::vector<std::uint32_t> local(const Block& b) const {
    std::vector<std::uint32_t> out;
    for (auto x : b) out.push_back(static_cast<std::uint32_t>(x_local_[x]));
    return out;
  }

 private:
  Ambient amb_;
  int d_;
  gf::FieldPtr k_;
  std::uint32_t n_ = 0;
  std::optional<geom::ProjectiveSpace> ps_;
  std::optional<geom::AffineSpace> as_;
  std::vector<std::uint32_t> x_points_;
  std::vector<std::int32_t> x_local_;
  std::vector<Block> lines_in_x_, lines_off_x_;
};

struct TwistDesign {
  Perm pi;
  Design design;
};

/// D_π. π acts on X-local indices.
inline TwistDesign build_twist(const TwistSpace& sp, const Perm& pi) {
  if (pi.degree() != sp.x_size())
    throw Error(Errc::InvalidSpec, "π has degree " + std::to_string(pi.degree()) + ", X has " +
                                       std::to_string(sp.x_size()) + " points");
  Design d{sp.num_points(), sp.lines_off_x()};
  for (const auto& l : sp.lines_in_x()) {
    Block b;
    for (auto x : l) b.push_back(sp.x_points()[pi[static_cast<std::uint32_t>(sp.x_local(x))]]);
    d.blocks.push_back(std::move(b));
  }
  d = design::normalize(std::move(d));
  auto cov = design::check_pair_coverage(d);
  if (!cov.ok) throw Error(Errc::InvalidSpec, "twisted design is not a 2-design: " + cov.counterexample);
  return TwistDesign{pi, std::move(d)};
}

/// Ambient lines rebuilt from the design and the point set X alone: blocks
/// not inside X are lines, and each line inside X is ⟨x|y,z⟩ ∩ X.
inline std::vector<Block> recover_ambient_lines(const Design& d, const std::vector<std::uint32_t>& x_set) {
  std::vector<char> in_x(d.v, 0);
  for (auto x : x_set) in_x[x] = 1;
  design::PairIndex idx(d);
  std::vector<Block> out;
  for (const auto& b : d.blocks)
    if (!std::all_of(b.begin(), b.end(), [&](std::uint32_t x) { return in_x[x]; })) out.push_back(b);
  std::vector<std::uint32_t> outside;
  for (std::uint32_t x = 0; x < d.v; ++x)
    if (!in_x[x]) outside.push_back(x);
  if (outside.size() < 2) throw Error(Errc::RecoveryFailed, "X leaves fewer than two points outside");
  auto block = [&](std::uint32_t a, std::uint32_t b) { return idx.block(a, b); };
  std::set<Block> inside;
  for (std::size_t i = 0; i < x_set.size(); ++i)
    for (std::size_t j = i + 1; j < x_set.size(); ++j) {
      const auto y = x_set[i], z = x_set[j];
      Block line;
      for (std::size_t t = 0; t < 2; ++t) {
        auto u = design::xyz_union<std::uint32_t>(block, outside[t], y, z);
        Block cut;
        for (auto p : u)
          if (in_x[p]) cut.push_back(p);
        if (t == 0) line = cut;
        else if (cut != line) throw Error(Errc::RecoveryFailed, "different x give different lines through a pair of X");
      }
      inside.insert(line);
    }
  out.insert(out.end(), inside.begin(), inside.end());
  std::sort(out.begin(), out.end());
  auto cov = design::check_pair_coverage(Design{d.v, out});
  if (!cov.ok) throw Error(Errc::RecoveryFailed, "recovered lines are not a linear space: " + cov.counterexample);
  return out;
}

struct DoubleCosetWitness {
  Perm g, h;
};

/// (g, h) in H×H with π g = h π′, found by enumerating H.
inline std::optional<DoubleCosetWitness> double_coset_test(const Perm& pi, const Perm& pi2, const PermGroup& H,
                                                           std::uint64_t limit = 10'000'000) {
  if (pi.degree() != H.degree() || pi2.degree() != H.degree())
    throw Error(Errc::DegreeMismatch, "permutations and group act on different sets");
  if (H.order() > limit) throw Error(Errc::GroupTooLarge, "|H| = " + std::to_string(H.order()));
  const Perm pi2_inv = pi2.inverse();
  std::optional<DoubleCosetWitness> out;
  H.for_each_element([&](const Perm& g) {
    Perm h = pi * g * pi2_inv;
    if (H.contains(h)) {
      out = DoubleCosetWitness{g, std::move(h)};
      return false;
    }
    return true;
  });
  return out;
}

struct CosetBound {
  boost::multiprecision::cpp_int numerator, denominator;  // as in the formula
  boost::multiprecision::cpp_int reduced_num, reduced_den;
  std::string text() const {
    return numerator.str() + "/" + denominator.str() + " = " + reduced_num.str() + "/" + reduced_den.str();
  }
};

/// v_d! / (v_{d+1} |PΓL(d,q)|²) with v_i = (q^i - 1)/(q - 1).
inline CosetBound coset_bound(int d, std::uint32_t q) {
  using boost::multiprecision::cpp_int;
  if (d < 3) throw Error(Errc::InvalidArgument, "the bound needs d >= 3");
  auto pp = gf::prime_power(q);
  if (!pp) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
  auto v = [&](int i) {
    cpp_int r = 1;
    for (int k = 0; k < i; ++k) r *= q;
    return (r - 1) / (q - 1);
  };
  cpp_int fact = 1;
  for (cpp_int i = 2; i <= v(d); ++i) fact *= i;
  // |PΓL(d,q)| = m · |GL(d,q)| / (q - 1)
  cpp_int gl = 1, qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  cpp_int qi = 1;
  for (int i = 0; i < d; ++i) {
    gl *= qd - qi;
    qi *= q;
  }
  const cpp_int pgaml = gl / (q - 1) * pp->second;
  CosetBound b;
  b.numerator = fact;
  b.denominator = v(d + 1) * pgaml * pgaml;
  const cpp_int g = boost::multiprecision::gcd(b.numerator, b.denominator);
  b.reduced_num = b.numerator / g;
  b.reduced_den = b.denominator / g;
  return b;
}

// ---------------------------------------------------------------------------
// Providers of Δ₁, Δ₂
// ---------------------------------------------------------------------------

enum class Flavor { Proj, Aff, Sqs };

inline std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Proj: return "proj";
    case Flavor::Aff: return "aff";
    case Flavor::Sqs: return "sqs";
  }
  return "?";
}

struct DeltaPair {
  Flavor flavor = Flavor::Proj;
  std::uint32_t q = 2;
  Design delta1, delta2, classical;
  std::string hash1, hash2, hash_classical;
  std::uint64_t aut1_order = 0, aut2_order = 0;
  std::vector<std::uint32_t> aut1_fixed;  // points fixed by all of Aut Δ₁
  std::vector<std::uint32_t> support1;    // points moved by the twist giving Δ₁
  std::string provenance1, provenance2;   // how each was obtained
  std::uint64_t candidates_examined = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint32_t>> move_log;  // SQS switches: a1 b1 c1 d1 a2
};

namespace detail {

inline std::string cycle_text(const Perm& p) {
  std::string s;
  for (const auto& c : p.cycles()) {
    s += "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
    s += ")";
  }
  return s.empty() ? "()" : s;
}

struct Certified {
  canon::CanonicalForm form;
  PermGroup aut;
};

inline Certified certify(const Design& d) {
  auto cf = canon::canonical_form(d.incidence());
  PermGroup aut(d.v, cf.automorphisms.empty() ? std::vector<Perm>{Perm::identity(d.v)} : cf.automorphisms);
  return Certified{std::move(cf), std::move(aut)};
}

// (x, x1, x2, x3) in X-local indices: x = 0, x1..x3 the first three points
// of the first X-line missing 0.
inline std::vector<std::uint32_t> four_cycle(const TwistSpace& sp) {
  for (const auto& l : sp.lines_in_x()) {
    auto loc = sp.local(l);
    if (std::find(loc.begin(), loc.end(), 0u) != loc.end()) continue;
    std::sort(loc.begin(), loc.end());
    return {0, loc[0], loc[1], loc[2]};
  }
  throw Error(Errc::SearchExhausted, "every line of X passes through one point");
}

inline std::vector<std::uint32_t> support_of(const TwistSpace& sp, const Perm& pi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < pi.degree(); ++i)
    if (pi[i] != i) out.push_back(sp.x_points()[i]);
  return out;
}

inline void finish(DeltaPair& out, const Certified& c1, const Certified& c2, const canon::CanonicalForm& cc) {
  out.hash1 = c1.form.hash_hex();
  out.hash2 = c2.form.hash_hex();
  out.hash_classical = cc.hash_hex();
  out.aut1_order = c1.aut.order();
  out.aut2_order = c2.aut.order();
  out.aut1_fixed = perm::common_fixed_points(c1.aut);
  if (c1.form.bytes == c2.form.bytes || c1.form.bytes == cc.bytes || c2.form.bytes == cc.bytes)
    throw Error(Errc::SearchExhausted, "Δ designs are not pairwise nonisomorphic");
}

}  // namespace detail

/// Δ₁, Δ₂ with the parameters of PG₁(3,q); Aut Δ₁ fixes a point.
inline DeltaPair find_delta_proj(std::uint32_t q) {
  TwistSpace sp(Ambient::Projective, 3, q);
  DeltaPair out;
  out.flavor = Flavor::Proj;
  out.q = q;
  out.classical = sp.classical();
  const auto cc = canon::canonical_form(out.classical.incidence());
  const std::uint32_t nx = sp.x_size();
  if (q > 2) {
    // Δ₁ = D_(x x1 x2 x3) with x1, x2, x3 collinear and x off their line:
    // any automorphism centralizes the cycle on X, so it fixes x. The
    // transposition twist D_(x1 x2) does not work here: its group contains
    // the elations with axis X and swaps the two points of ⟨x1,x2⟩ left over.
    auto rho = Perm::from_cycles(nx, {detail::four_cycle(sp)});
    auto tau = Perm::from_cycles(nx, {{0, 1, 2}});
    out.delta1 = build_twist(sp, rho).design;
    out.delta2 = build_twist(sp, tau).design;
    auto c1 = detail::certify(out.delta1), c2 = detail::certify(out.delta2);
    out.support1 = detail::support_of(sp, rho);
    out.provenance1 = "twist pi=" + detail::cycle_text(rho) + " (x1,x2,x3 collinear, line misses x)";
    out.provenance2 = "twist pi=" + detail::cycle_text(tau) + " on X";
    out.candidates_examined = 2;
    detail::finish(out, c1, c2, cc);
    if (out.aut1_fixed.empty()) throw Error(Errc::SearchExhausted, "Aut of the 4-cycle twist fixes no point");
    return out;
  }
  // q = 2: all π ∈ Sym(7), one representative per distinct block set.
  std::vector<std::uint32_t> img(nx);
  std::iota(img.begin(), img.end(), 0u);
  std::set<std::vector<Block>> seen;
  std::vector<std::pair<Perm, Design>> distinct;
  do {
    Perm pi(img);
    auto t = build_twist(sp, pi);
    if (!seen.insert(t.design.blocks).second) continue;
    distinct.emplace_back(pi, std::move(t.design));
  } while (std::next_permutation(img.begin(), img.end()));
  out.candidates_examined = distinct.size();
  // Prefer trivial Aut, then any Aut with a fixed point.
  std::vector<detail::Certified> certs;
  for (const auto& [pi, d] : distinct) certs.push_back(detail::certify(d));
  std::optional<std::size_t> pick1;
  for (int pass = 0; pass < 2 && !pick1; ++pass)
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (certs[i].form.bytes == cc.bytes) continue;
      const bool ok = pass == 0 ? certs[i].aut.order() == 1 : !perm::common_fixed_points(certs[i].aut).empty();
      if (ok) {
        pick1 = i;
        break;
      }
    }
  if (!pick1) throw Error(Errc::SearchExhausted, "no twisted PG₁(3,2) has an automorphism group fixing a point");
  std::optional<std::size_t> pick2;
  for (std::size_t i = 0; i < distinct.size() && !pick2; ++i)
    if (certs[i].form.bytes != cc.bytes && certs[i].form.bytes != certs[*pick1].form.bytes) pick2 = i;
  if (!pick2) throw Error(Errc::SearchExhausted, "only one nonclassical twisted PG₁(3,2) found");
  out.delta1 = distinct[*pick1].second;
  out.delta2 = distinct[*pick2].second;
  out.provenance1 = "search over Sym(X): pi=" + detail::cycle_text(distinct[*pick1].first);
  out.provenance2 = "search over Sym(X): pi=" + detail::cycle_text(distinct[*pick2].first);
  detail::finish(out, certs[*pick1], certs[*pick2], cc);
  return out;
}

/// Δ₁, Δ₂ with the parameters of AG₁(3,q); Aut Δ₁ fixes at least two points.
/// Δ₁ is D_(x x1 x2 x3) with x1, x2, x3 collinear and x off their line. For
/// q >= 4 its group is the identity on those four points; for q = 3 only the
/// weaker fixed-point count is required, with a short-cycle search as backup.
inline DeltaPair find_delta_aff(std::uint32_t q) {
  if (q < 3) throw Error(Errc::InvalidSpec, "affine designs need q >= 3");
  TwistSpace sp(Ambient::Affine, 3, q);
  DeltaPair out;
  out.flavor = Flavor::Aff;
  out.q = q;
  out.classical = sp.classical();
  const auto cc = canon::canonical_form(out.classical.incidence());
  const std::uint32_t nx = sp.x_size();

  auto identity_on = [](const PermGroup& aut, const std::vector<std::uint32_t>& pts) {
    for (const auto& g : aut.generators())
      for (auto x : pts)
        if (g[x] != x) return false;
    return true;
  };

  Perm rho = Perm::from_cycles(nx, {detail::four_cycle(sp)});
  out.delta1 = build_twist(sp, rho).design;
  std::optional<detail::Certified> c1 = detail::certify(out.delta1);
  out.support1 = detail::support_of(sp, rho);
  out.candidates_examined = 1;
  const bool rigid = identity_on(c1->aut, out.support1);
  if (q >= 4 && !rigid) throw Error(Errc::SearchExhausted, "Aut(D_π) moves a point of the 4-cycle's support");
  if (rigid) {
    out.provenance1 = "twist pi=" + detail::cycle_text(rho) + " (x1,x2,x3 collinear, line misses x)";
  } else if (perm::common_fixed_points(c1->aut).size() >= 2) {
    out.provenance1 = "twist pi=" + detail::cycle_text(rho) + " (x1,x2,x3 collinear, line misses x), Aut fixes >= 2 points";
  } else {
    c1.reset();
    std::mt19937_64 rng(q);
    for (int t = 0; t < 5000 && !c1; ++t) {
      const std::size_t len = 3 + rng() % 3;
      std::vector<std::uint32_t> pts(nx);
      std::iota(pts.begin(), pts.end(), 0u);
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(len);
      rho = Perm::from_cycles(nx, {pts});
      auto d = build_twist(sp, rho).design;
      auto c = detail::certify(d);
      ++out.candidates_examined;
      if (c.form.bytes == cc.bytes || perm::common_fixed_points(c.aut).size() < 2) continue;
      out.delta1 = std::move(d);
      out.support1 = detail::support_of(sp, rho);
      out.provenance1 = "random short-cycle search: pi=" + detail::cycle_text(rho) + ", Aut fixes >= 2 points";
      c1 = std::move(c);
    }
    if (!c1) throw Error(Errc::SearchExhausted, "no short-cycle twist has Aut fixing two points");
  }

  // Δ₂: first short twist not isomorphic to Δ₁ or the classical design.
  std::vector<Perm> candidates{Perm::from_cycles(nx, {{0, 1}}), Perm::from_cycles(nx, {{0, 1, 2}}),
                               Perm::from_cycles(nx, {{0, 1}, {2, 3}}), Perm::from_cycles(nx, {{0, 1, 2, 3}}),
                               Perm::from_cycles(nx, {{0, 1, 2, 3, 4}})};
  for (const auto& p : candidates) {
    auto d = build_twist(sp, p).design;
    auto c = detail::certify(d);
    ++out.candidates_examined;
    if (c.form.bytes == cc.bytes || c.form.bytes == c1->form.bytes) continue;
    out.delta2 = std::move(d);
    out.provenance2 = "twist pi=" + detail::cycle_text(p);
    detail::finish(out, *c1, c, cc);
    if (out.aut1_fixed.size() < 2) throw Error(Errc::SearchExhausted, "Aut Δ₁ fixes fewer than two points");
    return out;
  }
  throw Error(Errc::SearchExhausted, "no second twisted design found");
}

// ---------------------------------------------------------------------------
// Steiner quadruple systems of order 16
// ---------------------------------------------------------------------------

/// AG₂(4,2): points of GF(2)^4 as 4-bit ids, blocks {x, y, z, x^y^z}.
inline Design ag2_4_2() {
  std::set<Block> blocks;
  for (std::uint32_t x = 0; x < 16; ++x)
    for (std::uint32_t y = x + 1; y < 16; ++y)
      for (std::uint32_t z = y + 1; z < 16; ++z) {
        Block b{x, y, z, x ^ y ^ z};
        std::sort(b.begin(), b.end());
        blocks.insert(b);
      }
  return Design{16, std::vector<Block>(blocks.begin(), blocks.end())};
}

namespace detail {

// Triple -> block lookup for an SQS on v points.
class TripleIndex {
 public:
  explicit TripleIndex(std::uint32_t v) : v_(v), table_(static_cast<std::size_t>(v) * v * v, -1) {}
  std::size_t key(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    std::uint32_t t[3] = {a, b, c};
    std::sort(t, t + 3);
    return (static_cast<std::size_t>(t[0]) * v_ + t[1]) * v_ + t[2];
  }
  void set_block(const Block& b, std::int32_t idx) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) table_[key(b[i], b[j], b[k])] = idx;
  }
  std::int32_t get(std::uint32_t a, std::uint32_t b, std::uint32_t c) const { return table_[key(a, b, c)]; }

 private:
  std::uint32_t v_;
  std::vector<std::int32_t> table_;
};

inline std::uint32_t fourth(const Block& b, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  for (auto p : b)
    if (p != x && p != y && p != z) return p;
  return b[0];
}

}  // namespace detail

struct SqsSearchOptions {
  std::uint64_t seed = 1;
  std::uint64_t max_moves = 200000;
};

/// Δ₁, Δ₂ with the parameters of AG₂(4,2) by random 8-block switches from
/// AG₂(4,2); Aut Δ₁ is trivial. Each switch swaps the even quadruples
/// {a_i,b_j,c_k,d_l} (i+j+k+l even) for the odd ones, which cover the same
/// triples.
inline DeltaPair find_delta_sqs(const SqsSearchOptions& opt = {}) {
  DeltaPair out;
  out.flavor = Flavor::Sqs;
  out.q = 2;
  out.seed = opt.seed;
  out.classical = ag2_4_2();
  const auto cc = canon::canonical_form(out.classical.incidence());

  std::vector<Block> blocks = out.classical.blocks;
  detail::TripleIndex idx(16);
  for (std::size_t i = 0; i < blocks.size(); ++i) idx.set_block(blocks[i], static_cast<std::int32_t>(i));
  std::mt19937_64 rng(opt.seed);

  std::optional<detail::Certified> c1;
  std::optional<Design> best_partial;
  for (std::uint64_t step = 0; step < opt.max_moves; ++step) {
    const Block B = blocks[rng() % blocks.size()];
    std::uint32_t a2 = static_cast<std::uint32_t>(rng() % 16);
    if (std::find(B.begin(), B.end(), a2) != B.end()) continue;
    std::uint32_t order[4] = {B[0], B[1], B[2], B[3]};
    std::shuffle(order, order + 4, rng);
    const std::uint32_t a1 = order[0], b1 = order[1], c1p = order[2], d1 = order[3];
    const std::uint32_t b2 = detail::fourth(blocks[idx.get(a2, c1p, d1)], a2, c1p, d1);
    const std::uint32_t c2 = detail::fourth(blocks[idx.get(a2, b1, d1)], a2, b1, d1);
    const std::uint32_t d2 = detail::fourth(blocks[idx.get(a2, b1, c1p)], a2, b1, c1p);
    if (b2 == c2 || b2 == d2 || c2 == d2) continue;
    const std::uint32_t A[2] = {a1, a2}, Bp[2] = {b1, b2}, C[2] = {c1p, c2}, D[2] = {d1, d2};
    std::vector<Block> even, odd;
    for (int m = 0; m < 16; ++m) {
      const int i = m & 1, j = (m >> 1) & 1, k = (m >> 2) & 1, l = (m >> 3) & 1;
      Block b{A[i], Bp[j], C[k], D[l]};
      std::sort(b.begin(), b.end());
      ((i + j + k + l) % 2 == 0 ? even : odd).push_back(b);
    }
    std::vector<std::int32_t> where;
    bool present = true;
    for (const auto& b : even) {
      const auto w = idx.get(b[0], b[1], b[2]);
      if (w < 0 || blocks[w] != b) {
        present = false;
        break;
      }
      where.push_back(w);
    }
    if (!present) continue;
    for (std::size_t t = 0; t < 8; ++t) {
      blocks[where[t]] = odd[t];
      idx.set_block(odd[t], where[t]);
    }
    out.move_log.push_back({a1, b1, c1p, d1, a2});

    Design cur = design::normalize(Design{16, blocks});
    auto c = detail::certify(cur);
    ++out.candidates_examined;
    if (c.form.bytes == cc.bytes) continue;
    if (!c1) {
      if (c.aut.order() == 1) {
        if (!design::check_triple_coverage(cur).ok) throw Error(Errc::SearchExhausted, "switch broke the 3-design property");
        out.delta1 = cur;
        c1 = std::move(c);
        out.provenance1 = "switching walk, " + std::to_string(out.move_log.size()) + " moves, seed " + std::to_string(opt.seed);
      } else if (!best_partial) {
        best_partial = cur;
      }
      continue;
    }
    if (c.form.bytes != c1->form.bytes) {
      if (!design::check_triple_coverage(cur).ok) throw Error(Errc::SearchExhausted, "switch broke the 3-design property");
      out.delta2 = cur;
      out.provenance2 = "switching walk, " + std::to_string(out.move_log.size()) + " moves, seed " + std::to_string(opt.seed);
      detail::finish(out, *c1, c, cc);
      return out;
    }
  }
  std::string partial = c1 ? "Δ₁ found (hash " + c1->form.hash_hex() + "), no Δ₂" : "no rigid Δ₁";
  throw Error(Errc::SearchBudgetExceeded, "switching budget of " + std::to_string(opt.max_moves) + " moves exhausted: " + partial);
}

}  // namespace autd::twist
