#pragma once

// Projective and affine spaces over K, flats and spans, the classical groups
// as point permutations, and the n-dimensional F-space viewed over K.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autdesign/error.hpp"
#include "autdesign/gf.hpp"
#include "autdesign/perm.hpp"

namespace autd::geom {

using gf::Elem;
using gf::Field;
using gf::FieldPtr;
using Vec = std::vector<Elem>;
using PointId = std::uint32_t;
using Block = std::vector<PointId>;

/// Enumeration of very large spaces is refused above this many points.
inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 20;

// ---------------------------------------------------------------------------
// Linear algebra over a field
// ---------------------------------------------------------------------------

/// Row-reduces `rows` in place and returns the rank; the first `rank` rows
/// are then an echelon basis of the row space.
inline int row_reduce(const Field& k, std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t len = rows[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < len && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const Elem inv = k.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = k.mul(x, inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const Elem f = k.neg(rows[r][col]);
      for (std::size_t c = col; c < len; ++c) rows[r][c] = k.add(rows[r][c], k.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

inline int rank_of(const Field& k, std::vector<Vec> rows) { return row_reduce(k, rows); }

inline Vec vec_add(const Field& k, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.add(a[i], b[i]);
  return r;
}
inline Vec vec_sub(const Field& k, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}
inline Vec vec_scale(const Field& k, Elem s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(s, a[i]);
  return r;
}
inline bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Elem x) { return x.is_zero(); });
}

// ---------------------------------------------------------------------------
// Flats
// ---------------------------------------------------------------------------

enum class Kind { Projective, Affine };

/// A subspace of PG(V) or AG(V): for projective flats the K-span of `basis`,
/// for affine flats `basepoint` + K-span of `basis`. The basis is kept in
/// reduced echelon form.
struct Flat {
  Kind kind = Kind::Projective;
  std::optional<Vec> basepoint;
  std::vector<Vec> basis;
  int dim = 0;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PG(d, K)
// ---------------------------------------------------------------------------

/// PG(d, q): points are 1-spaces of K^{d+1}, represented by vectors whose
/// leading nonzero coordinate is 1 and numbered densely in a fixed order.
class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldPtr k, int d, std::uint64_t limit = kDefaultEnumerationLimit)
      : k_(std::move(k)), d_(d), q_(k_->size()) {
    if (d < 0) throw Error(Errc::InvalidArgument, "negative projective dimension");
    offset_.assign(d + 2, 0);
    for (int i = 0; i <= d; ++i) offset_[i + 1] = offset_[i] + detail::ipow(q_, d - i);
    if (offset_[d + 1] > limit)
      throw Error(Errc::SizeLimit, "PG(" + std::to_string(d) + "," + std::to_string(q_) +
                                       ") exceeds the enumeration limit");
    n_ = static_cast<std::uint32_t>(offset_[d + 1]);
    coords_.reserve(static_cast<std::size_t>(n_) * (d + 1));
    for (PointId id = 0; id < n_; ++id) {
      Vec v = unrank(id);
      coords_.insert(coords_.end(), v.begin(), v.end());
    }
  }

  const Field& field() const { return *k_; }
  const FieldPtr& field_ptr() const { return k_; }
  int dim() const { return d_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t num_points() const { return n_; }
  std::span<const Elem> coords(PointId id) const {
    return {coords_.data() + static_cast<std::size_t>(id) * (d_ + 1), static_cast<std::size_t>(d_ + 1)};
  }
  Vec vec(PointId id) const {
    auto c = coords(id);
    return Vec(c.begin(), c.end());
  }

  /// Rank of the point K·v (v nonzero).
  PointId id_of(const Vec& v) const {
    int lead = -1;
    for (int i = 0; i <= d_; ++i)
      if (!v[i].is_zero()) {
        lead = i;
        break;
      }
    if (lead < 0) throw Error(Errc::InvalidArgument, "zero vector is not a projective point");
    const Elem inv = k_->inv(v[lead]);
    std::uint64_t r = 0;
    for (int i = lead + 1; i <= d_; ++i) r = r * q_ + k_->to_packed(k_->mul(v[i], inv));
    return static_cast<PointId>(offset_[lead] + r);
  }

  /// Points of the line through y and z, ascending.
  Block line(PointId y, PointId z) const {
    if (y == z) throw Error(Errc::EqualPoints, "a line needs two distinct points");
    const Vec vy = vec(y), vz = vec(z);
    Block out{y};
    for (std::uint32_t t = 0; t < q_; ++t)
      out.push_back(id_of(vec_add(*k_, vz, vec_scale(*k_, k_->from_packed(t), vy))));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Block> all_lines() const { return lines_among(all_points()); }

  std::vector<PointId> all_points() const {
    std::vector<PointId> pts(n_);
    for (PointId i = 0; i < n_; ++i) pts[i] = i;
    return pts;
  }

  /// Lines of the space contained in the given point set (which must be a
  /// subspace for the answer to be meaningful).
  std::vector<Block> lines_among(const std::vector<PointId>& pts) const {
    std::vector<Block> out;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        Block l = line(std::min(pts[a], pts[b]), std::max(pts[a], pts[b]));
        if (l[0] == std::min(pts[a], pts[b]) && l[1] == std::max(pts[a], pts[b])) out.push_back(std::move(l));
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  Flat span(const std::vector<PointId>& pts) const {
    if (pts.empty()) throw Error(Errc::InvalidArgument, "span of an empty point list");
    std::vector<Vec> rows;
    for (PointId p : pts) rows.push_back(vec(p));
    Flat f;
    f.kind = Kind::Projective;
    f.dim = row_reduce(*k_, rows) - 1;
    f.basis = std::move(rows);
    return f;
  }

  bool contains(const Flat& f, PointId p) const {
    auto rows = f.basis;
    rows.push_back(vec(p));
    return rank_of(*k_, rows) == static_cast<int>(f.basis.size());
  }

  std::vector<PointId> points_of(const Flat& f) const {
    std::vector<PointId> out;
    const int r = static_cast<int>(f.basis.size());
    const std::uint64_t total = detail::ipow(q_, r);
    for (std::uint64_t code = 1; code < total; ++code) {
      Vec v(d_ + 1, gf::kZero);
      std::uint64_t c = code;
      for (int i = 0; i < r; ++i) {
        Elem t = k_->from_packed(static_cast<std::uint32_t>(c % q_));
        c /= q_;
        if (!t.is_zero()) v = vec_add(*k_, v, vec_scale(*k_, t, f.basis[i]));
      }
      out.push_back(id_of(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Block> lines_of(const Flat& f) const { return lines_among(points_of(f)); }

  /// Image of a point under v ↦ (v·A)^σ, where σ is the p^frob Frobenius.
  PointId apply(PointId id, const std::vector<Vec>& a, int frob = 0) const {
    const auto x = coords(id);
    Vec r(d_ + 1, gf::kZero);
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; j <= d_; ++j) r[j] = k_->add(r[j], k_->mul(x[i], a[i][j]));
    for (auto& c : r) c = k_->frobenius(c, frob);
    return id_of(r);
  }

 private:
  Vec unrank(PointId id) const {
    int lead = 0;
    while (offset_[lead + 1] <= id) ++lead;
    std::uint64_t r = id - offset_[lead];
    Vec v(d_ + 1, gf::kZero);
    v[lead] = gf::kOne;
    for (int i = d_; i > lead; --i) {
      v[i] = k_->from_packed(static_cast<std::uint32_t>(r % q_));
      r /= q_;
    }
    return v;
  }

  FieldPtr k_;
  int d_;
  std::uint32_t q_;
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> offset_;
  std::vector<Elem> coords_;
};

// ---------------------------------------------------------------------------
// AG(d, K)
// ---------------------------------------------------------------------------

/// AG(d, q) on K^d; the id of a vector is its base-q numeral (first
/// coordinate most significant).
class AffineSpace {
 public:
  AffineSpace(FieldPtr k, int d, std::uint64_t limit = kDefaultEnumerationLimit)
      : k_(std::move(k)), d_(d), q_(k_->size()) {
    if (d < 1) throw Error(Errc::InvalidArgument, "affine dimension must be >= 1");
    const std::uint64_t n = detail::ipow(q_, d);
    if (n > limit) throw Error(Errc::SizeLimit, "AG exceeds the enumeration limit");
    n_ = static_cast<std::uint32_t>(n);
  }

  const Field& field() const { return *k_; }
  const FieldPtr& field_ptr() const { return k_; }
  int dim() const { return d_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t num_points() const { return n_; }

  Vec vec(PointId id) const {
    Vec v(d_);
    for (int i = d_ - 1; i >= 0; --i) {
      v[i] = k_->from_packed(id % q_);
      id /= q_;
    }
    return v;
  }
  PointId id_of(const Vec& v) const {
    std::uint64_t r = 0;
    for (int i = 0; i < d_; ++i) r = r * q_ + k_->to_packed(v[i]);
    return static_cast<PointId>(r);
  }

  /// {y + t(z - y) : t ∈ K}, ascending.
  Block line(PointId y, PointId z) const {
    if (y == z) throw Error(Errc::EqualPoints, "a line needs two distinct points");
    const Vec vy = vec(y), dir = vec_sub(*k_, vec(z), vy);
    Block out;
    for (std::uint32_t t = 0; t < q_; ++t)
      out.push_back(id_of(vec_add(*k_, vy, vec_scale(*k_, k_->from_packed(t), dir))));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PointId> all_points() const {
    std::vector<PointId> pts(n_);
    for (PointId i = 0; i < n_; ++i) pts[i] = i;
    return pts;
  }
  std::vector<Block> all_lines() const { return lines_among(all_points()); }

  std::vector<Block> lines_among(const std::vector<PointId>& pts) const {
    std::vector<Block> out;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const PointId lo = std::min(pts[a], pts[b]), hi = std::max(pts[a], pts[b]);
        Block l = line(lo, hi);
        if (l[0] == lo && l[1] == hi) out.push_back(std::move(l));
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  Flat span(const std::vector<PointId>& pts) const {
    if (pts.empty()) throw Error(Errc::InvalidArgument, "span of an empty point list");
    Flat f;
    f.kind = Kind::Affine;
    f.basepoint = vec(pts[0]);
    std::vector<Vec> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(vec_sub(*k_, vec(pts[i]), *f.basepoint));
    f.dim = row_reduce(*k_, rows);
    f.basis = std::move(rows);
    return f;
  }

  bool contains(const Flat& f, PointId p) const {
    auto rows = f.basis;
    rows.push_back(vec_sub(*k_, vec(p), *f.basepoint));
    return rank_of(*k_, rows) == static_cast<int>(f.basis.size());
  }

  std::vector<PointId> points_of(const Flat& f) const {
    std::vector<PointId> out;
    const int r = static_cast<int>(f.basis.size());
    const std::uint64_t total = detail::ipow(q_, r);
    for (std::uint64_t code = 0; code < total; ++code) {
      Vec v = *f.basepoint;
      std::uint64_t c = code;
      for (int i = 0; i < r; ++i) {
        Elem t = k_->from_packed(static_cast<std::uint32_t>(c % q_));
        c /= q_;
        if (!t.is_zero()) v = vec_add(*k_, v, vec_scale(*k_, t, f.basis[i]));
      }
      out.push_back(id_of(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Block> lines_of(const Flat& f) const { return lines_among(points_of(f)); }

  /// Image of a point under v ↦ (v·A)^σ + b.
  PointId apply(PointId id, const std::vector<Vec>& a, const Vec& b, int frob = 0) const {
    const Vec x = vec(id);
    Vec r(d_, gf::kZero);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) r[j] = k_->add(r[j], k_->mul(x[i], a[i][j]));
    for (auto& c : r) c = k_->frobenius(c, frob);
    return id_of(vec_add(*k_, r, b));
  }

 private:
  FieldPtr k_;
  int d_;
  std::uint32_t q_;
  std::uint32_t n_ = 0;
};

/// Dimension of the intersection of two affine flats in the same space, or
/// -1 when they are disjoint.
inline int affine_meet_dim(const Field& k, const Flat& a, const Flat& b) {
  std::vector<Vec> dirs = a.basis;
  dirs.insert(dirs.end(), b.basis.begin(), b.basis.end());
  const int sum = rank_of(k, dirs);
  auto with_offset = dirs;
  with_offset.push_back(vec_sub(k, *b.basepoint, *a.basepoint));
  if (rank_of(k, with_offset) != sum) return -1;
  return a.dim + b.dim - sum;
}

// ---------------------------------------------------------------------------
// Classical groups as permutations
// ---------------------------------------------------------------------------

enum class GroupKind { PGL, PGammaL, AGL, AGammaL };

namespace detail {

inline std::vector<std::vector<Vec>> gl_generators(const Field& k, int d) {
  std::vector<std::vector<Vec>> gens;
  auto identity = [&] {
    std::vector<Vec> a(d, Vec(d, gf::kZero));
    for (int i = 0; i < d; ++i) a[i][i] = gf::kOne;
    return a;
  };
  // Transvections I + t·E_ij for t in an additive basis of K over GF(p).
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      for (int e = 0; e < k.m(); ++e) {
        auto a = identity();
        a[i][j] = k.theta_pow(e);
        gens.push_back(std::move(a));
      }
    }
  if (k.size() > 2) {
    auto a = identity();
    a[0][0] = k.theta();
    gens.push_back(std::move(a));
  }
  return gens;
}

}  // namespace detail

/// Generators of PGL/PΓL(d, q) on the points of PG(d-1, q), or of AGL/AΓL on
/// the points of AG(d, q). A Frobenius generator is included exactly when the
/// group is semilinear and q is not prime.
inline std::vector<perm::Perm> group_gens(GroupKind kind, int d, FieldPtr k) {
  if (d < 1) throw Error(Errc::InvalidArgument, "group dimension must be >= 1");
  std::vector<perm::Perm> out;
  const auto mats = detail::gl_generators(*k, d);
  const bool semilinear = kind == GroupKind::PGammaL || kind == GroupKind::AGammaL;
  const bool frob = semilinear && k->m() > 1;
  if (kind == GroupKind::PGL || kind == GroupKind::PGammaL) {
    ProjectiveSpace ps(k, d - 1);
    auto make = [&](const std::vector<Vec>& a, int f) {
      std::vector<std::uint32_t> img(ps.num_points());
      for (PointId x = 0; x < ps.num_points(); ++x) img[x] = ps.apply(x, a, f);
      return perm::Perm(std::move(img));
    };
    for (const auto& a : mats) out.push_back(make(a, 0));
    if (frob) {
      std::vector<Vec> id(d, Vec(d, gf::kZero));
      for (int i = 0; i < d; ++i) id[i][i] = gf::kOne;
      out.push_back(make(id, 1));
    }
    if (out.empty()) out.push_back(perm::Perm::identity(ps.num_points()));
  } else {
    AffineSpace as(k, d);
    std::vector<Vec> id(d, Vec(d, gf::kZero));
    for (int i = 0; i < d; ++i) id[i][i] = gf::kOne;
    const Vec zero(d, gf::kZero);
    auto make = [&](const std::vector<Vec>& a, const Vec& b, int f) {
      std::vector<std::uint32_t> img(as.num_points());
      for (PointId x = 0; x < as.num_points(); ++x) img[x] = as.apply(x, a, b, f);
      return perm::Perm(std::move(img));
    };
    for (const auto& a : mats) out.push_back(make(a, zero, 0));
    for (int i = 0; i < d; ++i)
      for (int e = 0; e < k->m(); ++e) {
        Vec b = zero;
        b[i] = k->theta_pow(e);
        out.push_back(make(id, b, 0));
      }
    if (frob) out.push_back(make(id, zero, 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// V = F^n viewed over K
// ---------------------------------------------------------------------------

/// V_F = F^n regarded as an (n·s)-dimensional K-space. Points are encoded as
/// the base-|F| numeral of the packed F-coordinates (coordinate 0 most
/// significant); projective points are stored normalized so that the leading
/// nonzero K-coordinate of the expansion (coordinate by coordinate, θ-basis
/// order inside each) is 1.
class TowerSpace {
 public:
  using Id = std::uint64_t;

  TowerSpace(const gf::TowerEmbedding& tower, int n) : t_(&tower), n_(n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "dimension must be >= 1");
    long double bits = 0;
    for (int i = 0; i < n; ++i) bits += std::log2(static_cast<long double>(f().size()));
    if (bits > 63.0L) throw Error(Errc::SizeLimit, "point codes do not fit in 64 bits");
    fsize_ = f().size();
  }

  const gf::TowerEmbedding& tower() const { return *t_; }
  const Field& f() const { return *t_->sup; }
  const Field& k() const { return *t_->sub; }
  int n() const { return n_; }
  int s() const { return t_->s; }
  int k_dim() const { return n_ * t_->s; }

  Id encode(const Vec& v) const {
    Id r = 0;
    for (int i = 0; i < n_; ++i) r = r * fsize_ + f().to_packed(v[i]);
    return r;
  }
  Vec decode(Id id) const {
    Vec v(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      v[i] = f().from_packed(static_cast<std::uint32_t>(id % fsize_));
      id /= fsize_;
    }
    return v;
  }

  /// The K-expansion (length n·s).
  Vec k_expand(const Vec& v) const {
    Vec out;
    out.reserve(k_dim());
    for (int i = 0; i < n_; ++i) {
      const Elem* c = t_->k_coords(v[i]);
      out.insert(out.end(), c, c + t_->s);
    }
    return out;
  }
  Vec from_k(const Vec& kv) const {
    Vec v(n_);
    for (int i = 0; i < n_; ++i) v[i] = t_->from_k_coords(kv.data() + static_cast<std::ptrdiff_t>(i) * t_->s);
    return v;
  }

  /// Scales v by the inverse of its leading K-coordinate (v ≠ 0).
  Vec proj_normalize(Vec v) const {
    for (int i = 0; i < n_; ++i) {
      if (v[i].is_zero()) continue;
      const Elem* c = t_->k_coords(v[i]);
      for (int j = 0; j < t_->s; ++j)
        if (!c[j].is_zero()) {
          const Elem inv = f().inv(t_->to_sup(c[j]));
          for (auto& x : v) x = f().mul(x, inv);
          return v;
        }
    }
    throw Error(Errc::InvalidArgument, "zero vector is not a projective point");
  }
  Id proj_id(const Vec& v) const { return encode(proj_normalize(v)); }

  /// Scales v so that its first nonzero F-coordinate is 1.
  Vec f_normalize(Vec v) const {
    for (int i = 0; i < n_; ++i)
      if (!v[i].is_zero()) {
        const Elem inv = f().inv(v[i]);
        for (auto& x : v) x = f().mul(x, inv);
        return v;
      }
    return v;
  }
  /// Code of the F-line F·v, or 0 for v = 0.
  Id f_direction(const Vec& v) const { return encode(f_normalize(v)); }

  Vec add(const Vec& a, const Vec& b) const { return vec_add(f(), a, b); }
  Vec sub(const Vec& a, const Vec& b) const { return vec_sub(f(), a, b); }
  Vec scale(Elem c, const Vec& a) const { return vec_scale(f(), c, a); }

  /// Projective K-line through two points, as ascending ids.
  std::vector<Id> proj_line(const Vec& y, const Vec& z) const {
    std::vector<Id> out{proj_id(y)};
    for (std::uint32_t t = 0; t < k().size(); ++t)
      out.push_back(proj_id(add(z, scale(t_->to_sup(k().from_packed(t)), y))));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
      throw Error(Errc::EqualPoints, "points are equal");
    return out;
  }
  /// Affine K-line {y + t(z - y)}, ascending ids.
  std::vector<Id> aff_line(const Vec& y, const Vec& z) const {
    const Vec dir = sub(z, y);
    if (vec_is_zero(dir)) throw Error(Errc::EqualPoints, "points are equal");
    std::vector<Id> out;
    for (std::uint32_t t = 0; t < k().size(); ++t)
      out.push_back(encode(add(y, scale(t_->to_sup(k().from_packed(t)), dir))));
    std::sort(out.begin(), out.end());
    return out;
  }

  int k_rank(const std::vector<Vec>& vs) const {
    std::vector<Vec> rows;
    rows.reserve(vs.size());
    for (const auto& v : vs) rows.push_back(k_expand(v));
    return rank_of(k(), std::move(rows));
  }

  /// Echelon K-basis (as F-vectors) of the K-span of `vs`.
  std::vector<Vec> k_basis(const std::vector<Vec>& vs) const {
    std::vector<Vec> rows;
    for (const auto& v : vs) rows.push_back(k_expand(v));
    row_reduce(k(), rows);
    std::vector<Vec> out;
    for (const auto& r : rows) out.push_back(from_k(r));
    return out;
  }

  /// All projective points of the K-span of `basis` (linearly independent).
  std::vector<Id> proj_points_of_span(const std::vector<Vec>& basis) const {
    std::vector<Id> out;
    const std::uint32_t q = k().size();
    const std::uint64_t total = detail::ipow(q, static_cast<int>(basis.size()));
    for (std::uint64_t code = 1; code < total; ++code) {
      Vec v(n_, gf::kZero);
      std::uint64_t c = code;
      for (const auto& b : basis) {
        Elem t = k().from_packed(static_cast<std::uint32_t>(c % q));
        c /= q;
        if (!t.is_zero()) v = add(v, scale(t_->to_sup(t), b));
      }
      out.push_back(proj_id(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// All points of base + K-span(basis).
  std::vector<Id> aff_points_of_span(const Vec& base, const std::vector<Vec>& basis) const {
    std::vector<Id> out;
    const std::uint32_t q = k().size();
    const std::uint64_t total = detail::ipow(q, static_cast<int>(basis.size()));
    for (std::uint64_t code = 0; code < total; ++code) {
      Vec v = base;
      std::uint64_t c = code;
      for (const auto& b : basis) {
        Elem t = k().from_packed(static_cast<std::uint32_t>(c % q));
        c /= q;
        if (!t.is_zero()) v = add(v, scale(t_->to_sup(t), b));
      }
      out.push_back(encode(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const gf::TowerEmbedding* t_;
  int n_;
  std::uint64_t fsize_ = 0;
};

}  // namespace autd::geom
