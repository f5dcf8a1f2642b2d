#pragma once

// Permutations and permutation groups with a deterministic Schreier-Sims
// stabilizer chain.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "autdesign/error.hpp"

namespace autd::perm {

/// A bijection of {0, ..., degree-1}. Products act on the right, as in
/// x^(ab) = (x^a)^b, so `a * b` applies a first.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto x : img_) {
      if (x >= img_.size() || seen[x]) throw Error(Errc::InvalidArgument, "images do not form a bijection");
      seen[x] = true;
    }
  }

  static Perm identity(std::uint32_t degree) {
    Perm p;
    p.img_.resize(degree);
    std::iota(p.img_.begin(), p.img_.end(), 0u);
    return p;
  }

  /// Builds a permutation from disjoint cycles.
  static Perm from_cycles(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
    auto p = identity(degree);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree) throw Error(Errc::InvalidArgument, "cycle entry out of range");
        p.img_[c[i]] = c[(i + 1) % c.size()];
      }
    return Perm(std::move(p.img_));
  }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator[](std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::uint32_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw Error(Errc::DegreeMismatch, "product of permutations of different degree");
    Perm r;
    r.img_.resize(a.img_.size());
    for (std::uint32_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::uint32_t num_moved() const {
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < img_.size(); ++i) c += img_[i] != i;
    return c;
  }

  std::vector<std::vector<std::uint32_t>> cycles() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::uint32_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<std::uint32_t> c;
      for (std::uint32_t x = i; !seen[x]; x = img_[x]) {
        seen[x] = true;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  /// `deg k: i0 i1 ... i(k-1)`
  std::string to_string() const {
    std::ostringstream os;
    os << "deg " << img_.size() << ":";
    for (auto x : img_) os << ' ' << x;
    return os.str();
  }

  static Perm parse(const std::string& line) {
    std::istringstream is(line);
    std::string tag, deg_tok;
    if (!(is >> tag >> deg_tok) || tag != "deg" || deg_tok.empty() || deg_tok.back() != ':')
      throw Error(Errc::ParseError, "expected 'deg k:' in permutation line: " + line);
    deg_tok.pop_back();
    std::uint32_t k = 0;
    try {
      k = static_cast<std::uint32_t>(std::stoul(deg_tok));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad degree in permutation line: " + line);
    }
    std::vector<std::uint32_t> img;
    std::uint32_t x = 0;
    while (is >> x) img.push_back(x);
    if (!is.eof()) throw Error(Errc::ParseError, "non-numeric image in permutation line: " + line);
    if (img.size() != k) throw Error(Errc::ParseError, "permutation line has wrong number of images");
    try {
      return Perm(std::move(img));
    } catch (const Error& e) {
      throw Error(Errc::ParseError, e.what());
    }
  }

 private:
  std::vector<std::uint32_t> img_;
};

/// Reads one permutation per non-empty line; '#' starts a comment.
inline std::vector<Perm> parse_group_text(const std::string& text) {
  std::vector<Perm> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(Perm::parse(line));
  }
  if (!out.empty())
    for (const auto& p : out)
      if (p.degree() != out[0].degree()) throw Error(Errc::DegreeMismatch, "group file mixes degrees");
  return out;
}

inline std::string format_group_text(const std::vector<Perm>& gens) {
  std::string s;
  for (const auto& g : gens) s += g.to_string() + "\n";
  return s;
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw Error(Errc::SizeLimit, "group order exceeds 64 bits");
  return a * b;
}

}  // namespace detail

/// A permutation group with a base and strong generating set.
class PermGroup {
 public:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Perm> gens;      // strong generators fixing earlier base points
    std::vector<std::uint32_t> orbit;
    std::vector<Perm> transversal;  // transversal[i] maps base to orbit[i]
    std::vector<std::int32_t> index;  // point -> position in orbit, or -1
  };

  PermGroup() = default;

  /// Runs Schreier-Sims. `base_prefix` points are used first, in order.
  PermGroup(std::uint32_t degree, std::vector<Perm> gens, std::vector<std::uint32_t> base_prefix = {})
      : degree_(degree) {
    for (auto& g : gens) {
      if (g.degree() != degree) throw Error(Errc::DegreeMismatch, "generator degree differs from group degree");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    build(base_prefix);
  }

  explicit PermGroup(const std::vector<Perm>& gens)
      : PermGroup(gens.empty() ? 0u : gens[0].degree(), gens) {}

  std::uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Level>& chain() const { return levels_; }
  std::vector<std::uint32_t> base() const {
    std::vector<std::uint32_t> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_) o = detail::checked_mul(o, l.orbit.size());
    return o;
  }

  /// Sifts g through the chain from `from`; returns the residue and the
  /// level at which sifting stopped (levels().size() when it went through).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from = 0) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const auto& lv = levels_[l];
      const std::uint32_t beta = g[lv.base];
      const std::int32_t idx = lv.index[beta];
      if (idx < 0) return {std::move(g), l};
      g = g * lv.transversal[idx].inverse();
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) throw Error(Errc::DegreeMismatch, "membership test with wrong degree");
    auto [r, l] = strip(g);
    return l == levels_.size() && r.is_identity();
  }

  /// Orbit ids per point (smallest point of the orbit).
  std::vector<std::uint32_t> orbit_ids() const { return orbit_ids_of(degree_, gens_); }

  std::vector<std::vector<std::uint32_t>> orbits() const {
    auto ids = orbit_ids();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::int32_t> slot(degree_, -1);
    for (std::uint32_t x = 0; x < degree_; ++x) {
      if (slot[ids[x]] < 0) {
        slot[ids[x]] = static_cast<std::int32_t>(out.size());
        out.emplace_back();
      }
      out[slot[ids[x]]].push_back(x);
    }
    return out;
  }

  static std::vector<std::uint32_t> orbit_ids_of(std::uint32_t degree, const std::vector<Perm>& gens) {
    std::vector<std::uint32_t> parent(degree);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : gens)
      for (std::uint32_t x = 0; x < degree; ++x) {
        auto a = find(x), b = find(g[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::vector<std::uint32_t> ids(degree);
    for (std::uint32_t x = 0; x < degree; ++x) ids[x] = find(x);
    return ids;
  }

  /// All elements; refuses groups larger than `limit`.
  std::vector<Perm> elements(std::uint64_t limit = 10'000'000) const {
    if (order() > limit) throw Error(Errc::GroupTooLarge, "group too large to enumerate");
    std::vector<Perm> out;
    for_each_element([&](const Perm& g) {
      out.push_back(g);
      return true;
    });
    return out;
  }

  /// Calls f on every element until it returns false. Returns false if
  /// stopped early.
  template <class F>
  bool for_each_element(F&& f) const {
    Perm id = Perm::identity(degree_);
    if (levels_.empty()) return f(id);
    return visit(levels_.size(), id, f);
  }

  template <class Rng>
  Perm random_element(Rng& rng) const {
    Perm g = Perm::identity(degree_);
    for (std::size_t l = levels_.size(); l-- > 0;) {
      std::uniform_int_distribution<std::size_t> d(0, levels_[l].orbit.size() - 1);
      g = g * levels_[l].transversal[d(rng)];
    }
    return g;
  }

 private:
  // Elements are u_k ... u_1 with u_i from level i's transversal.
  template <class F>
  bool visit(std::size_t l, const Perm& prefix, F& f) const {
    if (l == 0) return f(prefix);
    for (const auto& u : levels_[l - 1].transversal)
      if (!visit(l - 1, prefix * u, f)) return false;
    return true;
  }

  void recompute_orbit(Level& lv) const {
    lv.orbit.assign(1, lv.base);
    lv.transversal.assign(1, Perm::identity(degree_));
    lv.index.assign(degree_, -1);
    lv.index[lv.base] = 0;
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      const std::uint32_t beta = lv.orbit[i];
      for (const auto& s : lv.gens) {
        const std::uint32_t img = s[beta];
        if (lv.index[img] >= 0) continue;
        lv.index[img] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(img);
        lv.transversal.push_back(lv.transversal[i] * s);
      }
    }
  }

  // New base points: the moved point lying in the largest orbit of the whole
  // group, ties broken by the smallest point.
  std::uint32_t pick_base_point(const Perm& g) const {
    std::uint32_t best = degree_;
    std::size_t best_size = 0;
    for (std::uint32_t x = 0; x < degree_; ++x) {
      if (g[x] == x) continue;
      const std::size_t sz = orbit_size_[orbit_id_[x]];
      if (best == degree_ || sz > best_size) {
        best = x;
        best_size = sz;
      }
    }
    return best;
  }

  void add_level(std::uint32_t base) {
    Level lv;
    lv.base = base;
    levels_.push_back(std::move(lv));
  }

  bool fixes_base_prefix(const Perm& g, std::size_t upto) const {
    for (std::size_t l = 0; l < upto; ++l)
      if (g[levels_[l].base] != levels_[l].base) return false;
    return true;
  }

  void build(const std::vector<std::uint32_t>& base_prefix) {
    if (degree_ == 0) return;
    orbit_id_ = orbit_ids_of(degree_, gens_);
    orbit_size_.assign(degree_, 0);
    for (auto id : orbit_id_) ++orbit_size_[id];

    for (auto b : base_prefix) {
      if (b >= degree_) throw Error(Errc::InvalidArgument, "base point out of range");
      add_level(b);
    }
    for (const auto& g : gens_) {
      if (fixes_base_prefix(g, levels_.size())) add_level(pick_base_point(g));
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      for (const auto& g : gens_)
        if (fixes_base_prefix(g, l)) levels_[l].gens.push_back(g);
      recompute_orbit(levels_[l]);
    }

    std::int64_t i = static_cast<std::int64_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      Level& lv = levels_[i];
      for (std::size_t oi = 0; oi < lv.orbit.size() && !restarted; ++oi) {
        for (std::size_t si = 0; si < lv.gens.size() && !restarted; ++si) {
          const Perm& s = lv.gens[si];
          const std::uint32_t img = s[lv.orbit[oi]];
          Perm h = lv.transversal[oi] * s * lv.transversal[lv.index[img]].inverse();
          if (h.is_identity()) continue;
          auto [r, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
          if (j == levels_.size() && r.is_identity()) continue;
          if (j == levels_.size()) add_level(pick_base_point(r));
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            levels_[l].gens.push_back(r);
            recompute_orbit(levels_[l]);
          }
          i = static_cast<std::int64_t>(j);
          restarted = true;
        }
      }
      if (!restarted) --i;
    }
    // Trailing trivial levels from an explicit base prefix are kept: they
    // contribute a factor of 1 and keep base() aligned with the prefix.
  }

  std::uint32_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  std::vector<std::uint32_t> orbit_id_;
  std::vector<std::size_t> orbit_size_;
};

inline bool is_member(const Perm& g, const PermGroup& G) { return G.contains(g); }

inline PermGroup schreier_sims(const std::vector<Perm>& gens) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "need at least one generator to fix the degree");
  for (const auto& g : gens)
    if (g.degree() != gens[0].degree()) throw Error(Errc::DegreeMismatch, "generators of different degree");
  return PermGroup(gens[0].degree(), gens);
}

/// Certificate that every point stabilizer is trivial.
struct SemiregularCert {
  std::uint64_t group_order = 0;
  std::uint32_t domain_size = 0;
  std::string method;             // "enumeration" or "orbit-size"
  std::uint64_t elements_checked = 0;
};

/// A point and a non-identity element fixing it.
struct SemiregularFailure {
  std::uint32_t point = 0;
  Perm element;
};

struct SemiregularResult {
  std::optional<SemiregularCert> cert;
  std::optional<SemiregularFailure> failure;
  explicit operator bool() const { return cert.has_value(); }
};

inline SemiregularResult semiregular(const PermGroup& G) {
  SemiregularResult res;
  const std::uint64_t order = G.order();
  const auto orbits = G.orbits();
  if (order <= 10'000) {
    SemiregularCert cert{order, G.degree(), "enumeration", 0};
    std::optional<SemiregularFailure> bad;
    G.for_each_element([&](const Perm& g) {
      ++cert.elements_checked;
      if (g.is_identity()) return true;
      for (std::uint32_t x = 0; x < g.degree(); ++x)
        if (g[x] == x) {
          bad = SemiregularFailure{x, g};
          return false;
        }
      return true;
    });
    if (bad)
      res.failure = std::move(bad);
    else
      res.cert = cert;
    return res;
  }
  for (const auto& orb : orbits) {
    if (orb.size() == order) continue;
    PermGroup stab(G.degree(), G.generators(), {orb[0]});
    for (const auto& s : stab.chain().size() > 1 ? stab.chain()[1].gens : std::vector<Perm>{})
      if (!s.is_identity()) {
        res.failure = SemiregularFailure{orb[0], s};
        return res;
      }
    throw Error(Errc::ConstructionFailed, "orbit smaller than group but no stabilizing element found");
  }
  res.cert = SemiregularCert{order, G.degree(), "orbit-size", 0};
  return res;
}

/// Subgroup fixing every point of `points`.
inline PermGroup pointwise_stabilizer(const PermGroup& G, const std::vector<std::uint32_t>& points) {
  PermGroup chain(G.degree(), G.generators(), points);
  std::vector<Perm> gens;
  if (chain.chain().size() > points.size()) gens = chain.chain()[points.size()].gens;
  if (gens.empty()) gens.push_back(Perm::identity(G.degree()));
  return PermGroup(G.degree(), gens);
}

/// Points fixed by every generator.
inline std::vector<std::uint32_t> common_fixed_points(const PermGroup& G) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < G.degree(); ++x) {
    bool fixed = true;
    for (const auto& g : G.generators()) fixed = fixed && g[x] == x;
    if (fixed) out.push_back(x);
  }
  return out;
}

inline bool groups_equal(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw Error(Errc::DegreeMismatch, "groups act on different degrees");
  if (a.order() != b.order()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

}  // namespace autd::perm
