#pragma once

// The main constructions as lazy block oracles over V = F^n: projective
// (F = GF(q^4), blocks are K-lines), affine (F = GF(q^3), blocks are affine
// K-lines) and SQS (F = GF(16), blocks are affine planes over GF(2)). The
// sets F·v_i and F·(v_a + θv_b), one per vertex and per ordered edge of Γ,
// carry relabeled copies of Δ₁ and Δ₂ instead of their classical blocks.
// Also here: the recovery procedures and sampled verification.

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "autdesign/canon.hpp"
#include "autdesign/design.hpp"
#include "autdesign/error.hpp"
#include "autdesign/frucht.hpp"
#include "autdesign/geom.hpp"
#include "autdesign/gf.hpp"
#include "autdesign/perm.hpp"
#include "autdesign/twist.hpp"
#include "json.hpp"

namespace autd::steiner {

using geom::Vec;
using twist::Flavor;
using Id = geom::TowerSpace::Id;
using GBlock = std::vector<Id>;

inline int extension_degree(Flavor f) { return f == Flavor::Aff ? 3 : 4; }
inline int strength(Flavor f) { return f == Flavor::Sqs ? 3 : 2; }
inline std::uint32_t block_size(Flavor f, std::uint32_t q) {
  switch (f) {
    case Flavor::Proj: return q + 1;
    case Flavor::Aff: return q;
    case Flavor::Sqs: return 4;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: sample i of check c under seed s is reproducible on
/// its own, whatever the thread layout.
class SampleRng {
 public:
  using result_type = std::uint64_t;
  SampleRng(std::uint64_t seed, std::uint64_t check, std::uint64_t index)
      : state_(splitmix64(seed ^ splitmix64(check * 0x100000001b3ULL ^ splitmix64(index)))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return splitmix64(state_++); }
  std::uint64_t below(std::uint64_t n) { return (*this)() % n; }

 private:
  std::uint64_t state_;
};

/// Runs f(i) for i < count over `jobs` threads; results come back in index
/// order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, F&& f) {
  std::vector<R> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += jobs) out[i] = f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra over K on K-coordinate vectors
// ---------------------------------------------------------------------------

namespace detail {

/// Row space in reduced echelon form, with membership tests.
class Echelon {
 public:
  Echelon(const gf::Field& k, std::vector<Vec> rows) : k_(&k) {
    geom::row_reduce(k, rows);
    rows_ = std::move(rows);
    for (const auto& r : rows_) {
      std::size_t c = 0;
      while (r[c].is_zero()) ++c;
      pivots_.push_back(c);
    }
  }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool contains(Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto c = pivots_[i];
      if (v[c].is_zero()) continue;
      const auto f = k_->neg(v[c]);
      for (std::size_t j = c; j < v.size(); ++j) v[j] = k_->add(v[j], k_->mul(f, rows_[i][j]));
    }
    return std::all_of(v.begin(), v.end(), [](gf::Elem e) { return e.is_zero(); });
  }

 private:
  const gf::Field* k_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Vec> differences(const gf::Field& k, const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  for (std::size_t i = 1; i < pts.size(); ++i) out.push_back(geom::vec_sub(k, pts[i], pts[0]));
  return out;
}

/// Projective rank, or affine dimension.
inline int span_dim(Flavor f, const gf::Field& k, const std::vector<Vec>& pts) {
  if (f == Flavor::Proj) return geom::rank_of(k, pts);
  return geom::rank_of(k, differences(k, pts));
}

/// The block is a line (projective, affine) or a plane (SQS).
inline bool is_flat(Flavor f, const gf::Field& k, const std::vector<Vec>& pts) {
  return span_dim(f, k, pts) == (f == Flavor::Sqs ? 2 : 1) + (f == Flavor::Proj ? 1 : 0);
}

/// Two blocks of one modified set that together span it: non-lines spanning
/// a solid (projective), planes spanning a 3-space (affine), 3-spaces
/// spanning the 4-space (SQS).
inline bool sharp_pair(Flavor f, const gf::Field& k, const std::vector<Vec>& b1, const std::vector<Vec>& b2) {
  std::vector<Vec> both = b1;
  both.insert(both.end(), b2.begin(), b2.end());
  switch (f) {
    case Flavor::Proj:
      return !is_flat(f, k, b1) && !is_flat(f, k, b2) && geom::rank_of(k, both) == 4;
    case Flavor::Aff:
    case Flavor::Sqs: {
      const int want = f == Flavor::Aff ? 2 : 3;
      if (span_dim(f, k, b1) != want || span_dim(f, k, b2) != want) return false;
      // Meeting in a flat of one dimension less means the direction spaces
      // are not equal, and the joint span is one dimension more.
      auto dirs = differences(k, b1);
      auto d2 = differences(k, b2);
      dirs.insert(dirs.end(), d2.begin(), d2.end());
      return geom::rank_of(k, dirs) == want + 1 && span_dim(f, k, both) == want + 1;
    }
  }
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Local geometry of one modified set: F·w ≅ K^s via c·w ↦ K-coordinates of c
// ---------------------------------------------------------------------------

class LocalGeometry {
 public:
  LocalGeometry(Flavor f, gf::FieldPtr k, int s) : f_(f), k_(std::move(k)), s_(s) {
    if (f == Flavor::Proj) {
      ps_.emplace(k_, s - 1);
      n_ = ps_->num_points();
    } else {
      as_.emplace(k_, s);
      n_ = as_->num_points();
    }
  }
  Flavor flavor() const { return f_; }
  const gf::Field& field() const { return *k_; }
  std::uint32_t num_points() const { return n_; }
  Vec coords(std::uint32_t id) const { return ps_ ? ps_->vec(id) : as_->vec(id); }
  std::uint32_t id_of(const Vec& c) const { return ps_ ? ps_->id_of(c) : as_->id_of(c); }
  std::vector<Vec> coords(const design::Block& b) const {
    std::vector<Vec> out;
    for (auto x : b) out.push_back(coords(x));
    return out;
  }
  bool is_flat(const design::Block& b) const { return detail::is_flat(f_, *k_, coords(b)); }
  bool sharp_pair(const design::Block& b1, const design::Block& b2) const {
    return detail::sharp_pair(f_, *k_, coords(b1), coords(b2));
  }
  /// The classical local design: lines, or planes for SQS.
  design::Design classical() const {
    if (ps_) return design::normalize(design::Design{n_, ps_->all_lines()});
    if (f_ == Flavor::Aff) return design::normalize(design::Design{n_, as_->all_lines()});
    std::set<design::Block> planes;
    for (std::uint32_t x = 0; x < n_; ++x)
      for (std::uint32_t y = x + 1; y < n_; ++y)
        for (std::uint32_t z = y + 1; z < n_; ++z) {
          planes.insert(as_->points_of(as_->span({x, y, z})));
        }
    std::vector<design::Block> out;
    for (auto b : planes) {
      std::sort(b.begin(), b.end());
      out.push_back(b);
    }
    return design::normalize(design::Design{n_, out});
  }

 private:
  Flavor f_;
  gf::FieldPtr k_;
  int s_;
  std::uint32_t n_ = 0;
  std::optional<geom::ProjectiveSpace> ps_;
  std::optional<geom::AffineSpace> as_;
};

/// A relabeling of Δ onto the local points and two blocks witnessing the
/// sharp condition after relabeling (indices into the normalized block list).
struct SharpWitness {
  std::vector<std::uint32_t> relabel;
  std::uint32_t b1 = 0, b2 = 0;
};

/// The block list placed in every modified set of one kind.
struct Template {
  design::Design local;
  SharpWitness witness;
  std::vector<std::int32_t> lookup;  // pair (or triple) of local points -> block

  std::int32_t block_index(std::span<const std::uint32_t> pts) const {
    const std::size_t n = local.v;
    std::size_t key = 0;
    std::array<std::uint32_t, 3> t{};
    std::copy(pts.begin(), pts.end(), t.begin());
    std::sort(t.begin(), t.begin() + pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) key = key * n + t[i];
    return lookup[key];
  }
};

namespace detail {

inline void build_lookup(Template& t, int strength) {
  const std::size_t n = t.local.v;
  t.lookup.assign(strength == 2 ? n * n : n * n * n, -1);
  for (std::size_t bi = 0; bi < t.local.blocks.size(); ++bi) {
    const auto& b = t.local.blocks[bi];
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (strength == 2) {
          t.lookup[b[i] * n + b[j]] = static_cast<std::int32_t>(bi);
          continue;
        }
        for (std::size_t k = j + 1; k < b.size(); ++k)
          t.lookup[(b[i] * n + b[j]) * n + b[k]] = static_cast<std::int32_t>(bi);
      }
  }
}

inline Template template_from(const design::Design& delta, const LocalGeometry& geo, const SharpWitness& w) {
  if (delta.v != geo.num_points())
    throw Error(Errc::InvalidArgument, "Δ has " + std::to_string(delta.v) + " points, the modified sets have " +
                                           std::to_string(geo.num_points()));
  perm::Perm relabel(w.relabel);
  Template t;
  t.local.v = delta.v;
  for (const auto& b : delta.blocks) {
    design::Block img;
    for (auto x : b) img.push_back(relabel[x]);
    t.local.blocks.push_back(img);
  }
  t.local = design::normalize(std::move(t.local));
  t.witness = w;
  if (w.b1 >= t.local.blocks.size() || w.b2 >= t.local.blocks.size() || w.b1 == w.b2 ||
      !geo.sharp_pair(t.local.blocks[w.b1], t.local.blocks[w.b2]))
    throw Error(Errc::SharpUnsatisfied, "witness blocks do not satisfy the spanning condition");
  build_lookup(t, geo.flavor() == Flavor::Sqs ? 3 : 2);
  return t;
}

/// First seeded random relabeling of Δ with a witness pair.
inline Template find_template(const design::Design& delta, const LocalGeometry& geo, std::uint64_t seed,
                              int attempts = 1000) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> img(delta.v);
  for (int a = 0; a < attempts; ++a) {
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    perm::Perm relabel(img);
    design::Design d{delta.v, {}};
    for (const auto& b : delta.blocks) {
      design::Block r;
      for (auto x : b) r.push_back(relabel[x]);
      d.blocks.push_back(r);
    }
    d = design::normalize(std::move(d));
    for (std::uint32_t i = 0; i < d.blocks.size(); ++i)
      for (std::uint32_t j = i + 1; j < d.blocks.size(); ++j)
        if (geo.sharp_pair(d.blocks[i], d.blocks[j])) return template_from(delta, geo, SharpWitness{img, i, j});
  }
  throw Error(Errc::SharpUnsatisfied, "no relabeling of Δ satisfies the spanning condition");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Modified sets and the oracle
// ---------------------------------------------------------------------------

struct ModifiedSet {
  int kind = 1;          // 1: F·v_a, 2: F·(v_a + θ v_b)
  std::uint32_t a = 0, b = 0;
  Vec generator;
  Id direction = 0;      // code of the F-normalized generator
  std::uint32_t orbit = 0;  // index of the orbit representative's set
  perm::Perm transport;  // element of G carrying the representative here
};

struct AssembleInputs {
  Flavor flavor = Flavor::Proj;
  std::uint32_t q = 2;
  frucht::GammaGraph gamma;
  twist::DeltaPair deltas;
  std::optional<std::array<SharpWitness, 2>> witnesses;  // searched when absent
  std::uint64_t seed = 1;
};

class DesignOracle {
 public:
  explicit DesignOracle(AssembleInputs in) : in_(std::move(in)) {
    const auto f = in_.flavor;
    if (f == Flavor::Aff && in_.q <= 2) throw Error(Errc::InvalidSpec, "the affine construction needs q > 2");
    if (f == Flavor::Sqs && in_.q != 2) throw Error(Errc::InvalidSpec, "the SQS construction is over GF(2)");
    if (in_.gamma.graph.n < frucht::kMinVertices) throw Error(Errc::TooSmall, "Γ needs at least 6 vertices");
    tower_ = std::make_shared<const gf::TowerEmbedding>(gf::make_tower(in_.q, extension_degree(f)));
    space_.emplace(*tower_, static_cast<int>(in_.gamma.graph.n));
    local_.emplace(f, tower_->sub, tower_->s);
    const design::Design* deltas[2] = {&in_.deltas.delta1, &in_.deltas.delta2};
    for (int kind = 0; kind < 2; ++kind) {
      templates_[kind] = in_.witnesses ? detail::template_from(*deltas[kind], *local_, (*in_.witnesses)[kind])
                                       : detail::find_template(*deltas[kind], *local_, in_.seed * 2 + kind);
    }
    build_sets();
  }

  Flavor flavor() const { return in_.flavor; }
  std::uint32_t q() const { return in_.q; }
  std::uint32_t n() const { return in_.gamma.graph.n; }
  std::uint32_t k() const { return block_size(in_.flavor, in_.q); }
  int t() const { return strength(in_.flavor); }
  const AssembleInputs& inputs() const { return in_; }
  const geom::TowerSpace& space() const { return *space_; }
  const gf::TowerEmbedding& tower() const { return *tower_; }
  const LocalGeometry& local() const { return *local_; }
  const Template& templ(int kind) const { return templates_[kind - 1]; }
  const std::vector<ModifiedSet>& sets() const { return sets_; }
  const gf::Field& kfield() const { return space_->k(); }
  const gf::Field& ffield() const { return space_->f(); }

  /// |points|, as long as it fits in 64 bits.
  std::uint64_t num_points() const {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n(); ++i) total *= ffield().size();
    return in_.flavor == Flavor::Proj ? (total - 1) / (q() - 1) : total;
  }

  Vec point(Id id) const { return space_->decode(id); }
  Id id(const Vec& v) const { return in_.flavor == Flavor::Proj ? space_->proj_id(v) : space_->encode(v); }

  Id random_point(SampleRng& rng) const {
    Vec v(n());
    for (;;) {
      for (auto& e : v) e = ffield().from_packed(static_cast<std::uint32_t>(rng.below(ffield().size())));
      if (in_.flavor != Flavor::Proj || !geom::vec_is_zero(v)) return id(v);
    }
  }
  Id random_point_in(std::uint32_t set, SampleRng& rng) const {
    return global(set, static_cast<std::uint32_t>(rng.below(local_->num_points())));
  }

  /// Index of a modified set containing all of the points, if any.
  std::optional<std::uint32_t> common_set(std::span<const Id> pts) const {
    std::optional<Id> dir;
    for (auto p : pts) {
      Vec v = point(p);
      if (geom::vec_is_zero(v)) continue;
      const Id d = space_->f_direction(v);
      if (dir && *dir != d) return std::nullopt;
      dir = d;
    }
    if (!dir) return std::nullopt;
    auto it = index_.find(*dir);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t local_of(std::uint32_t set, Id p) const {
    const Vec v = point(p);
    const auto c = v[sets_[set].a];
    const gf::Elem* kc = tower_->k_coords(c);
    return local_->id_of(Vec(kc, kc + tower_->s));
  }
  Id global(std::uint32_t set, std::uint32_t local_id) const {
    const Vec c = local_->coords(local_id);
    const auto x = tower_->from_k_coords(c.data());
    return id(space_->scale(x, sets_[set].generator));
  }
  std::vector<Id> set_points(std::uint32_t set) const {
    std::vector<Id> out;
    for (std::uint32_t i = 0; i < local_->num_points(); ++i) out.push_back(global(set, i));
    std::sort(out.begin(), out.end());
    return out;
  }
  GBlock global_block(std::uint32_t set, const design::Block& local_block) const {
    GBlock out;
    for (auto x : local_block) out.push_back(global(set, x));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The block of the unmodified space through the points.
  GBlock geometric_block(std::span<const Id> pts) const {
    const Vec y = point(pts[0]), z = point(pts[1]);
    switch (in_.flavor) {
      case Flavor::Proj: return space_->proj_line(y, z);
      case Flavor::Aff: return space_->aff_line(y, z);
      case Flavor::Sqs: {
        const Vec x = point(pts[2]);
        GBlock b{pts[0], pts[1], pts[2], id(space_->add(space_->add(y, z), x))};
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw Error(Errc::EqualPoints, "points are equal");
        return b;
      }
    }
    return {};
  }

  /// The unique block through t distinct points.
  GBlock block(std::span<const Id> pts) const {
    if (static_cast<int>(pts.size()) != t())
      throw Error(Errc::InvalidArgument, "block queries take " + std::to_string(t()) + " points");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) throw Error(Errc::EqualPoints, "block through a repeated point");
    if (auto s = common_set(pts)) {
      const auto& tp = templ(sets_[*s].kind);
      std::array<std::uint32_t, 3> loc{};
      for (std::size_t i = 0; i < pts.size(); ++i) loc[i] = local_of(*s, pts[i]);
      const auto bi = tp.block_index(std::span<const std::uint32_t>(loc.data(), pts.size()));
      if (bi < 0) throw Error(Errc::OracleInconsistent, "local design misses a point set");
      return global_block(*s, tp.local.blocks[bi]);
    }
    return geometric_block(pts);
  }
  GBlock block(Id a, Id b) const {
    const Id p[2] = {a, b};
    return block(std::span<const Id>(p, 2));
  }
  GBlock block(Id a, Id b, Id c) const {
    const Id p[3] = {a, b, c};
    return block(std::span<const Id>(p, 3));
  }

  /// The point permutation induced by a vertex permutation.
  Id apply(const perm::Perm& g, Id p) const {
    const Vec v = point(p);
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[g[static_cast<std::uint32_t>(i)]] = v[i];
    return id(w);
  }

  /// Replaces one point of one local block (for negative controls).
  void edit_block(int kind, std::size_t block, std::size_t pos, std::uint32_t new_point) {
    auto& tp = templates_[kind - 1];
    tp.local.blocks.at(block).at(pos) = new_point;
    std::sort(tp.local.blocks[block].begin(), tp.local.blocks[block].end());
    detail::build_lookup(tp, t());
  }

 private:
  void build_sets() {
    const auto& g = in_.gamma;
    const std::uint32_t nv = g.graph.n;
    auto& F = space_->f();
    auto basis = [&](std::uint32_t i) {
      Vec v(nv, gf::kZero);
      v[i] = gf::kOne;
      return v;
    };
    // Orbits of G on vertices and ordered edges, with transports.
    std::vector<perm::Perm> elems = g.g_action.elements();
    std::sort(elems.begin(), elems.end());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
    for (std::uint32_t i = 0; i < nv; ++i) keys.emplace_back(i, i);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    for (auto [u, v] : g.graph.edges) {
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    keys.insert(keys.end(), arcs.begin(), arcs.end());
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> where;
    for (const auto& key : keys) {
      if (where.count(key)) continue;
      const std::uint32_t rep = static_cast<std::uint32_t>(sets_.size());
      for (const auto& h : elems) {
        const auto img = std::make_pair(h[key.first], h[key.second]);
        if (where.count(img)) {
          if (sets_[where[img]].orbit == rep)
            throw Error(Errc::CollisionDetected, "G is not semiregular on vertices or arcs");
          continue;
        }
        ModifiedSet m;
        m.kind = key.first == key.second ? 1 : 2;
        m.a = img.first;
        m.b = img.second;
        m.generator = basis(m.a);
        if (m.kind == 2) m.generator[m.b] = F.theta();
        m.direction = space_->f_direction(m.generator);
        m.orbit = rep;
        m.transport = h;
        where[img] = static_cast<std::uint32_t>(sets_.size());
        sets_.push_back(std::move(m));
      }
    }
    // Distinct sets must have distinct F-directions.
    for (std::uint32_t i = 0; i < sets_.size(); ++i)
      if (!index_.emplace(sets_[i].direction, i).second)
        throw Error(Errc::CollisionDetected, "two modified sets share an F-direction");
  }

  AssembleInputs in_;
  std::shared_ptr<const gf::TowerEmbedding> tower_;
  std::optional<geom::TowerSpace> space_;
  std::optional<LocalGeometry> local_;
  std::array<Template, 2> templates_;
  std::vector<ModifiedSet> sets_;
  std::unordered_map<Id, std::uint32_t> index_;
};

inline DesignOracle assemble(AssembleInputs in) { return DesignOracle(std::move(in)); }

// ---------------------------------------------------------------------------
// Block-defined point sets and recovery
// ---------------------------------------------------------------------------

inline std::vector<Id> xyz_set(const DesignOracle& o, Id x, Id y, Id z) {
  return design::xyz_union<Id>([&](Id a, Id b) { return o.block(a, b); }, x, y, z);
}

inline std::vector<Id> wxyz_set(const DesignOracle& o, Id w, Id x, Id y, Id z) {
  return design::wxyz_union<Id>([&](Id a, Id b, Id c) { return o.block(a, b, c); }, w, x, y, z);
}

namespace detail {

inline bool subset_of(const GBlock& b, const std::vector<Id>& sorted) {
  return std::includes(sorted.begin(), sorted.end(), b.begin(), b.end());
}

/// Given S = ⟨x|y,z⟩: yz itself if it lies in S, otherwise the union of the
/// pairs {y₁,z₁} ⊆ S whose block leaves S.
inline std::vector<Id> line_from_plane(const DesignOracle& o, const std::vector<Id>& s, Id y, Id z) {
  auto yz = o.block(y, z);
  if (subset_of(yz, s)) return yz;
  std::set<Id> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!subset_of(o.block(s[i], s[j]), s)) {
        out.insert(s[i]);
        out.insert(s[j]);
      }
  return std::vector<Id>(out.begin(), out.end());
}

/// Given U = ⟨w|x,y,z⟩: {x,y,z} plus the points reached by blocks through
/// other triples of U, when exactly one such point lies outside U.
inline std::vector<Id> plane_from_solid(const DesignOracle& o, const std::vector<Id>& u, Id x, Id y, Id z) {
  std::set<Id> extra;
  std::set<Id> xyz{x, y, z};
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      for (std::size_t k = j + 1; k < u.size(); ++k) {
        if (xyz.count(u[i]) && xyz.count(u[j]) && xyz.count(u[k])) continue;
        for (auto p : o.block(u[i], u[j], u[k]))
          if (!std::binary_search(u.begin(), u.end(), p)) extra.insert(p);
      }
  if (extra.size() != 1) return {};
  std::vector<Id> out{x, y, z, *extra.begin()};
  std::sort(out.begin(), out.end());
  return out;
}

template <class Candidate>
std::vector<Id> majority(std::size_t samples, Candidate&& candidate, const std::string& what) {
  std::map<std::vector<Id>, std::size_t> counts;
  for (std::size_t i = 0; i < samples; ++i) ++counts[candidate(i)];
  auto best = std::max_element(counts.begin(), counts.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  if (best == counts.end() || 2 * best->second <= samples || best->first.empty())
    throw Error(Errc::NoMajority, what + ": no candidate reached a majority of " + std::to_string(samples) + " samples");
  return best->first;
}

}  // namespace detail

/// ⟨y,z⟩ by majority over sampled x ∉ yz.
inline std::vector<Id> recover_line(const DesignOracle& o, Id y, Id z, SampleRng& rng, std::size_t samples = 9) {
  if (o.flavor() == Flavor::Sqs) throw Error(Errc::InvalidArgument, "SQS designs recover planes, not lines");
  if (y == z) throw Error(Errc::EqualPoints, "recover_line needs two points");
  const auto yz = o.block(y, z);
  return detail::majority(
      samples,
      [&](std::size_t) {
        Id x;
        do x = o.random_point(rng);
        while (std::binary_search(yz.begin(), yz.end(), x));
        return detail::line_from_plane(o, xyz_set(o, x, y, z), y, z);
      },
      "recover_line");
}

/// The plane of V on x, y, z by majority over sampled w ∉ xyz (SQS).
inline std::vector<Id> recover_plane(const DesignOracle& o, Id x, Id y, Id z, SampleRng& rng,
                                     std::size_t samples = 9) {
  if (o.flavor() != Flavor::Sqs) throw Error(Errc::InvalidArgument, "planes are recovered for SQS designs");
  const auto xyz = o.block(x, y, z);
  return detail::majority(
      samples,
      [&](std::size_t) {
        Id w;
        do w = o.random_point(rng);
        while (std::binary_search(xyz.begin(), xyz.end(), w));
        return detail::plane_from_solid(o, wxyz_set(o, w, x, y, z), x, y, z);
      },
      "recover_plane");
}

/// Tests whether x avoids the block on the base points and every span of the
/// base points with a modified set.
class ValidityTester {
 public:
  ValidityTester(const DesignOracle& o, std::vector<Id> base) : o_(&o), base_(std::move(base)) {
    base_block_ = o.block(std::span<const Id>(base_));
    const auto& sp = o.space();
    std::vector<Vec> rows;
    for (auto b : base_) rows.push_back(sp.k_expand(o.point(b)));
    const auto& F = sp.f();
    for (const auto& m : o.sets()) {
      auto r = rows;
      for (int e = 0; e < sp.s(); ++e) r.push_back(sp.k_expand(sp.scale(F.theta_pow(e), m.generator)));
      spans_.emplace_back(sp.k(), std::move(r));
    }
  }
  bool valid(Id x) const {
    if (std::binary_search(base_block_.begin(), base_block_.end(), x)) return false;
    const Vec v = o_->space().k_expand(o_->point(x));
    for (const auto& e : spans_)
      if (e.contains(v)) return false;
    return true;
  }

 private:
  const DesignOracle* o_;
  std::vector<Id> base_;
  GBlock base_block_;
  std::vector<detail::Echelon> spans_;
};

// ---------------------------------------------------------------------------
// Classification of the blocks that are not lines
// ---------------------------------------------------------------------------

struct RecoveredSet {
  std::vector<Id> points;
  int kind = 0;             // from the canonical form of the local design
  std::uint32_t matched = 0;  // index of the modified set with these points
  std::size_t blocks = 0;   // non-flat blocks assigned
};

/// Groups the non-flat blocks by the spanning criterion, rebuilds each set as
/// the span of a witness pair, and labels it by comparing its local design
/// with Δ₁ and Δ₂. Throws ClassificationMismatch if the result differs from
/// the modified sets.
inline std::vector<RecoveredSet> classify_nonline_blocks(const DesignOracle& o) {
  const auto f = o.flavor();
  const auto& sp = o.space();
  const auto& K = sp.k();
  struct NonFlat {
    GBlock ids;
    std::vector<Vec> vecs;
  };
  std::vector<NonFlat> blocks;
  for (std::uint32_t s = 0; s < o.sets().size(); ++s)
    for (const auto& lb : o.templ(o.sets()[s].kind).local.blocks) {
      NonFlat nf{o.global_block(s, lb), {}};
      for (auto p : nf.ids) nf.vecs.push_back(sp.k_expand(o.point(p)));
      if (!detail::is_flat(f, K, nf.vecs)) blocks.push_back(std::move(nf));
    }
  struct Group {
    std::vector<Vec> spanning;
    int dim = 0;
    std::size_t count = 0;
  };
  const int full = f == Flavor::Sqs ? 4 : 3;
  auto dim_with = [&](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> u = a;
    u.insert(u.end(), b.begin(), b.end());
    return detail::span_dim(f, K, u) - (f == Flavor::Proj ? 1 : 0);
  };
  std::vector<Group> groups;
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    bool placed = false;
    for (auto& g : groups)
      if (dim_with(g.spanning, blocks[i].vecs) == full) {
        ++g.count;
        placed = true;
        break;
      }
    if (placed) continue;
    for (std::size_t j = 0; j < pending.size() && !placed; ++j) {
      const auto& other = blocks[pending[j]];
      if (!detail::sharp_pair(f, K, other.vecs, blocks[i].vecs)) continue;
      Group g;
      g.spanning = other.vecs;
      g.spanning.insert(g.spanning.end(), blocks[i].vecs.begin(), blocks[i].vecs.end());
      g.count = 2;
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(j));
      // Earlier pending blocks may lie in the new set.
      for (std::size_t r = 0; r < pending.size();)
        if (dim_with(g.spanning, blocks[pending[r]].vecs) == full) {
          ++g.count;
          pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(r));
        } else {
          ++r;
        }
      groups.push_back(std::move(g));
      placed = true;
    }
    if (!placed) pending.push_back(i);
  }
  if (!pending.empty())
    throw Error(Errc::ClassificationMismatch, std::to_string(pending.size()) + " non-flat blocks lie in no recovered set");

  const auto c1 = canon::canonical_form(o.inputs().deltas.delta1.incidence());
  const auto c2 = canon::canonical_form(o.inputs().deltas.delta2.incidence());
  if (c1.bytes == c2.bytes) throw Error(Errc::ClassificationMismatch, "Δ₁ ≅ Δ₂, so the two kinds cannot be told apart");

  std::vector<RecoveredSet> out;
  std::vector<char> seen(o.sets().size(), 0);
  for (const auto& g : groups) {
    RecoveredSet r;
    r.blocks = g.count;
    // Points of the span of the witness pair.
    std::vector<Vec> fvecs;
    for (const auto& kv : g.spanning) fvecs.push_back(sp.from_k(kv));
    if (f == Flavor::Proj) {
      r.points = sp.proj_points_of_span(sp.k_basis(fvecs));
    } else {
      std::vector<Vec> dirs;
      for (std::size_t i = 1; i < fvecs.size(); ++i) dirs.push_back(sp.sub(fvecs[i], fvecs[0]));
      r.points = sp.aff_points_of_span(fvecs[0], sp.k_basis(dirs));
    }
    // Local design from block queries inside the set.
    std::set<GBlock> local_blocks;
    const auto& P = r.points;
    if (o.t() == 2) {
      for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j) local_blocks.insert(o.block(P[i], P[j]));
    } else {
      for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j)
          for (std::size_t k = j + 1; k < P.size(); ++k) local_blocks.insert(o.block(P[i], P[j], P[k]));
    }
    auto m = o.common_set(r.points);
    if (!m || o.set_points(*m) != r.points)
      throw Error(Errc::ClassificationMismatch, "a recovered set is not one of the modified sets");
    // In the set's own coordinates the local design is one of the templates;
    // otherwise fall back to comparing canonical forms.
    std::vector<design::Block> chart;
    for (const auto& b : local_blocks) {
      design::Block lb;
      for (auto p : b) {
        if (!std::binary_search(P.begin(), P.end(), p))
          throw Error(Errc::ClassificationMismatch, "a block leaves its recovered set");
        lb.push_back(o.local_of(*m, p));
      }
      chart.push_back(lb);
    }
    const auto local = design::normalize(design::Design{static_cast<std::uint32_t>(P.size()), chart});
    const bool is1 = local.blocks == o.templ(1).local.blocks, is2 = local.blocks == o.templ(2).local.blocks;
    if (is1 != is2) {
      r.kind = is1 ? 1 : 2;
    } else {
      const auto cf = canon::canonical_form(local.incidence());
      r.kind = cf.bytes == c1.bytes ? 1 : cf.bytes == c2.bytes ? 2 : 0;
    }
    if (r.kind == 0) throw Error(Errc::ClassificationMismatch, "a recovered set carries neither Δ₁ nor Δ₂");
    if (o.sets()[*m].kind != r.kind) throw Error(Errc::ClassificationMismatch, "a recovered set has the wrong kind");
    if (seen[*m]++) throw Error(Errc::ClassificationMismatch, "a modified set was recovered twice");
    r.matched = *m;
    out.push_back(std::move(r));
  }
  if (out.size() != o.sets().size())
    throw Error(Errc::ClassificationMismatch, "recovered " + std::to_string(out.size()) + " of " +
                                                  std::to_string(o.sets().size()) + " modified sets");
  return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> counterexamples;
  nlohmann::json extra = nlohmann::json::object();

  void fail(const std::string& why) {
    passed = false;
    ++failures;
    if (counterexamples.size() < 5) counterexamples.push_back(why);
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t coverage_samples = 10000;
  std::size_t plane_samples = 1000;
  std::size_t recover_samples = 100;
  std::size_t moved_samples = 1000;
  std::size_t majority_samples = 9;
  unsigned jobs = 1;
  bool classify = true;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json cj{{"name", c.name},       {"passed", c.passed},
                        {"samples", c.samples}, {"failures", c.failures},
                        {"counterexamples", c.counterexamples}};
      for (auto it = c.extra.begin(); it != c.extra.end(); ++it) cj[it.key()] = it.value();
      j["checks"].push_back(cj);
    }
    return j;
  }
};

namespace detail {

inline std::string show(const std::vector<Id>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

struct SampleOutcome {
  bool ok = true;
  std::string why;
  std::uint64_t rejections = 0;
};

// t distinct points, half the time all inside one modified set.
inline std::vector<Id> sample_points(const DesignOracle& o, SampleRng& rng, int count, bool inside) {
  std::vector<Id> pts;
  const auto set = static_cast<std::uint32_t>(rng.below(o.sets().size()));
  while (static_cast<int>(pts.size()) < count) {
    const Id p = inside ? o.random_point_in(set, rng) : o.random_point(rng);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

inline SampleOutcome coverage_sample(const DesignOracle& o, SampleRng& rng, std::size_t i) {
  SampleOutcome out;
  const auto pts = sample_points(o, rng, o.t(), i % 2 == 1);
  const auto b = o.block(std::span<const Id>(pts));
  auto bad = [&](const std::string& why) {
    out.ok = false;
    out.why = "query " + show(pts) + ": " + why;
    return out;
  };
  if (b.size() != o.k()) return bad("block " + show(b) + " has the wrong size");
  if (std::adjacent_find(b.begin(), b.end()) != b.end()) return bad("block repeats a point");
  for (auto p : pts)
    if (!std::binary_search(b.begin(), b.end(), p)) return bad("block " + show(b) + " misses a query point");
  if (!o.common_set(pts) && b != o.geometric_block(pts)) return bad("block outside the modified sets is not classical");
  // Every t-subset of the block must give the block back.
  const std::size_t k = b.size();
  std::vector<int> pick(k, 0);
  std::fill(pick.end() - o.t(), pick.end(), 1);
  do {
    std::vector<Id> sub;
    for (std::size_t j = 0; j < k; ++j)
      if (pick[j]) sub.push_back(b[j]);
    const auto again = o.block(std::span<const Id>(sub));
    if (again != b) return bad("subset " + show(sub) + " of " + show(b) + " gives " + show(again));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

inline SampleOutcome plane_sample(const DesignOracle& o, SampleRng& rng, std::size_t i) {
  SampleOutcome out;
  const auto& sp = o.space();
  const int base_count = o.t();
  const auto base = sample_points(o, rng, base_count, i % 2 == 1);
  ValidityTester tester(o, base);
  Id x = 0;
  for (;;) {
    x = o.random_point(rng);
    if (tester.valid(x)) break;
    if (++out.rejections > 200) {
      out.ok = false;
      out.why = "no valid point found for " + show(base);
      return out;
    }
  }
  auto bad = [&](const std::string& why) {
    out.ok = false;
    out.why = "base " + show(base) + ", x=" + std::to_string(x) + ": " + why;
    return out;
  };
  std::vector<Vec> vb;
  for (auto p : base) vb.push_back(o.point(p));
  const Vec vx = o.point(x);
  if (o.flavor() != Flavor::Sqs) {
    const Id y = base[0], z = base[1];
    std::vector<Id> plane;
    if (o.flavor() == Flavor::Proj) {
      plane = sp.proj_points_of_span(sp.k_basis({vx, vb[0], vb[1]}));
    } else {
      plane = sp.aff_points_of_span(vx, sp.k_basis({sp.sub(vb[0], vx), sp.sub(vb[1], vx)}));
    }
    const auto yz_line = o.geometric_block(base);
    // Every line of the plane other than ⟨y,z⟩ is a block.
    for (std::size_t a = 0; a < plane.size(); ++a)
      for (std::size_t b = a + 1; b < plane.size(); ++b) {
        const Id pr[2] = {plane[a], plane[b]};
        const auto line = o.geometric_block(pr);
        if (line == yz_line) continue;
        if (o.block(plane[a], plane[b]) != line) return bad("line " + show(line) + " of the plane is not a block");
      }
    const auto s = xyz_set(o, x, y, z);
    if (s != plane) return bad("⟨x|y,z⟩ = " + show(s) + " differs from the plane");
    const auto rec = line_from_plane(o, s, y, z);
    if (rec != yz_line) return bad("line rule gives " + show(rec) + ", expected " + show(yz_line));
    return out;
  }
  // SQS: the 3-space on w = x and the base triple.
  const Id a = base[0], b = base[1], c = base[2];
  const auto solid =
      sp.aff_points_of_span(vx, sp.k_basis({sp.sub(vb[0], vx), sp.sub(vb[1], vx), sp.sub(vb[2], vx)}));
  const auto plane = o.geometric_block(base);
  for (std::size_t p = 0; p < solid.size(); ++p)
    for (std::size_t q = p + 1; q < solid.size(); ++q)
      for (std::size_t r = q + 1; r < solid.size(); ++r) {
        const Id tr[3] = {solid[p], solid[q], solid[r]};
        const auto pl = o.geometric_block(tr);
        if (pl == plane) continue;
        if (o.block(solid[p], solid[q], solid[r]) != pl) return bad("plane " + show(pl) + " of the 3-space is not a block");
      }
  const auto u = wxyz_set(o, x, a, b, c);
  std::vector<Id> expect;
  const Id missing = o.id(sp.add(sp.add(vb[0], vb[1]), vb[2]));
  for (auto p : solid)
    if (p != missing) expect.push_back(p);
  if (u != expect) return bad("⟨w|x,y,z⟩ = " + show(u) + ", expected the 3-space without x+y+z");
  const auto rec = plane_from_solid(o, u, a, b, c);
  if (rec != plane) return bad("plane rule gives " + show(rec) + ", expected " + show(plane));
  return out;
}

inline SampleOutcome recover_sample(const DesignOracle& o, SampleRng& rng, std::size_t i, std::size_t majority) {
  SampleOutcome out;
  const auto pts = sample_points(o, rng, o.t(), i % 2 == 1);
  const auto expect = o.geometric_block(pts);
  for (std::size_t m = majority;; m *= 2) {
    try {
      const auto got = o.t() == 2 ? recover_line(o, pts[0], pts[1], rng, m) : recover_plane(o, pts[0], pts[1], pts[2], rng, m);
      if (got != expect) {
        out.ok = false;
        out.why = "query " + show(pts) + ": recovered " + show(got) + ", expected " + show(expect);
      }
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::NoMajority || m > 8 * majority) {
        out.ok = false;
        out.why = "query " + show(pts) + ": " + e.what();
        return out;
      }
    }
  }
}

}  // namespace detail

inline VerificationReport verify_design(const DesignOracle& o, const VerifyOptions& opt = {}) {
  VerificationReport rep;
  rep.seed = opt.seed;
  auto run = [&](const std::string& name, std::uint64_t check_id, std::size_t count, auto&& fn) {
    CheckResult c;
    c.name = name;
    c.samples = count;
    auto results = parallel_map<detail::SampleOutcome>(count, opt.jobs, [&](std::size_t i) {
      SampleRng rng(opt.seed, check_id, i);
      try {
        return fn(rng, i);
      } catch (const Error& e) {
        return detail::SampleOutcome{false, std::string("sample ") + std::to_string(i) + ": " + e.what(), 0};
      }
    });
    std::uint64_t rejections = 0;
    for (const auto& r : results) {
      rejections += r.rejections;
      if (!r.ok) c.fail(r.why);
    }
    c.extra["rejections"] = rejections;
    return c;
  };

  rep.checks.push_back(run(o.t() == 2 ? "pair_coverage" : "triple_coverage", 1, opt.coverage_samples,
                           [&](SampleRng& rng, std::size_t i) { return detail::coverage_sample(o, rng, i); }));

  {
    auto c = run("plane_sets", 2, opt.plane_samples,
                 [&](SampleRng& rng, std::size_t i) { return detail::plane_sample(o, rng, i); });
    const double trials = static_cast<double>(c.samples + c.extra["rejections"].get<std::uint64_t>());
    const double rate = trials > 0 ? c.extra["rejections"].get<std::uint64_t>() / trials : 0.0;
    c.extra["rejection_rate"] = rate;
    if (rate >= 0.5) c.fail("rejection rate " + std::to_string(rate) + " is not below 1/2");
    rep.checks.push_back(std::move(c));
  }

  rep.checks.push_back(run(o.t() == 2 ? "recover_line" : "recover_plane", 3, opt.recover_samples,
                           [&](SampleRng& rng, std::size_t i) {
                             return detail::recover_sample(o, rng, i, opt.majority_samples);
                           }));

  // G-invariance, exact on the modified sets and sampled on classical blocks.
  {
    CheckResult c;
    c.name = "g_invariance";
    const auto& G = o.inputs().gamma.g_action;
    const auto& gens = G.generators();
    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      for (std::uint32_t s = 0; s < o.sets().size(); ++s) {
        const auto& m = o.sets()[s];
        for (const auto& lb : o.templ(m.kind).local.blocks) {
          ++c.samples;
          const auto b = o.global_block(s, lb);
          GBlock img;
          for (auto p : b) img.push_back(o.apply(g, p));
          std::sort(img.begin(), img.end());
          const auto back = o.block(std::span<const Id>(img.data(), static_cast<std::size_t>(o.t())));
          if (back != img) c.fail("image of block " + detail::show(b) + " is not a block");
        }
      }
    }
    auto sampled = run("g_invariance_lines", 4, gens.empty() ? 0 : opt.recover_samples * 10,
                       [&](SampleRng& rng, std::size_t i) {
                         detail::SampleOutcome out;
                         const auto& g = gens[i % gens.size()];
                         const auto pts = detail::sample_points(o, rng, o.t(), false);
                         const auto b = o.block(std::span<const Id>(pts));
                         GBlock img;
                         for (auto p : b) img.push_back(o.apply(g, p));
                         std::sort(img.begin(), img.end());
                         if (o.block(std::span<const Id>(img.data(), static_cast<std::size_t>(o.t()))) != img) {
                           out.ok = false;
                           out.why = "image of block " + detail::show(b) + " is not a block";
                         }
                         return out;
                       });
    c.samples += sampled.samples;
    for (const auto& why : sampled.counterexamples) c.fail(why);
    if (sampled.failures > sampled.counterexamples.size()) c.failures += sampled.failures - sampled.counterexamples.size();
    // Faithfulness: a generator moving vertex i moves the point of v_i.
    for (const auto& g : gens)
      for (std::uint32_t i = 0; i < o.n(); ++i) {
        Vec v(o.n(), gf::kZero);
        v[i] = gf::kOne;
        const Id p = o.id(v);
        if ((g[i] != i) != (o.apply(g, p) != p)) c.fail("generator " + g.to_string() + " acts unfaithfully");
      }
    c.extra["group_order"] = G.order();
    c.extra["semiregular"] = static_cast<bool>(perm::semiregular(G));
    rep.checks.push_back(std::move(c));
  }

  if (opt.classify) {
    CheckResult c;
    c.name = "classification";
    try {
      auto rec = classify_nonline_blocks(o);
      c.samples = rec.size();
      std::size_t kind1 = 0;
      for (const auto& r : rec) kind1 += r.kind == 1;
      c.extra["sets"] = rec.size();
      c.extra["kind_I"] = kind1;
      c.extra["kind_II"] = rec.size() - kind1;
    } catch (const Error& e) {
      c.fail(e.what());
      c.extra["error"] = std::string(errc_name(e.code()));
    }
    rep.checks.push_back(std::move(c));
  }

  // Fraction of points moved by each nontrivial generator (reported only).
  {
    CheckResult c;
    c.name = "moved_points";
    nlohmann::json fr = nlohmann::json::array();
    std::uint64_t gi = 0;
    for (const auto& g : o.inputs().gamma.g_action.generators()) {
      ++gi;
      if (g.is_identity()) continue;
      auto moved = parallel_map<int>(opt.moved_samples, opt.jobs, [&](std::size_t i) {
        SampleRng rng(opt.seed, 100 + gi, i);
        const Id p = o.random_point(rng);
        return o.apply(g, p) != p ? 1 : 0;
      });
      std::size_t m = 0;
      for (int v : moved) m += v;
      c.samples += opt.moved_samples;
      fr.push_back(opt.moved_samples ? static_cast<double>(m) / opt.moved_samples : 0.0);
    }
    c.extra["fractions"] = fr;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace autd::steiner
