#include <gtest/gtest.h>

#include <map>
#include <set>

#include "autdesign/geom.hpp"

using namespace autd;
using namespace autd::geom;

namespace {

// Lines of PG(d,q) as the distinct point sets of 2-dim subspaces, enumerated
// from all pairs of vectors without using ProjectiveSpace::line.
std::set<Block> brute_pg_lines(const ProjectiveSpace& ps) {
  const auto& k = ps.field();
  std::set<Block> out;
  for (PointId a = 0; a < ps.num_points(); ++a)
    for (PointId b = a + 1; b < ps.num_points(); ++b) {
      std::set<PointId> pts;
      for (Elem s : k.elements())
        for (Elem t : k.elements()) {
          if (s.is_zero() && t.is_zero()) continue;
          pts.insert(ps.id_of(vec_add(k, vec_scale(k, s, ps.vec(a)), vec_scale(k, t, ps.vec(b)))));
        }
      out.insert(Block(pts.begin(), pts.end()));
    }
  return out;
}

void check_unique_line_per_pair(std::uint32_t n, const std::vector<Block>& lines) {
  std::vector<int> cnt(static_cast<std::size_t>(n) * n, 0);
  for (const auto& l : lines)
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = i + 1; j < l.size(); ++j) ++cnt[l[i] * n + l[j]];
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) ASSERT_EQ(cnt[a * n + b], 1) << a << "," << b;
}

bool maps_lines_to_lines(const perm::Perm& g, const std::vector<Block>& lines) {
  std::set<Block> s(lines.begin(), lines.end());
  for (const auto& l : lines) {
    Block img;
    for (auto x : l) img.push_back(g[x]);
    std::sort(img.begin(), img.end());
    if (!s.count(img)) return false;
  }
  return true;
}

}  // namespace

TEST(Projective, PG32LineCount) {
  ProjectiveSpace ps(gf::make_field(2, 1), 3);
  EXPECT_EQ(ps.num_points(), 15u);
  auto lines = ps.all_lines();
  EXPECT_EQ(lines.size(), 35u);
  auto brute = brute_pg_lines(ps);
  EXPECT_EQ(std::set<Block>(lines.begin(), lines.end()), brute);
  for (const auto& l : lines) EXPECT_EQ(l.size(), 3u);
}

TEST(Projective, EqualPointsThrows) {
  ProjectiveSpace ps(gf::make_field(2, 1), 3);
  try {
    ps.line(4, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EqualPoints);
  }
}

TEST(Projective, UniqueLinePerPair) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {3, 1}}) {
    ProjectiveSpace ps(gf::make_field(p, m), 3);
    check_unique_line_per_pair(ps.num_points(), ps.all_lines());
  }
  ProjectiveSpace ps4(gf::make_field(2, 2), 2);
  EXPECT_EQ(ps4.all_lines().size(), 21u);
}

TEST(Projective, IdRoundTrip) {
  ProjectiveSpace ps(gf::make_field(2, 2), 3);
  const auto& k = ps.field();
  for (PointId x = 0; x < ps.num_points(); ++x) {
    EXPECT_EQ(ps.id_of(ps.vec(x)), x);
    EXPECT_EQ(ps.id_of(vec_scale(k, k.theta(), ps.vec(x))), x);
  }
}

TEST(Projective, SpanAndFlats) {
  ProjectiveSpace ps(gf::make_field(2, 1), 3);
  EXPECT_EQ(ps.span({3}).dim, 0);
  // three non-collinear points
  auto l = ps.line(0, 1);
  PointId c = 0;
  while (std::find(l.begin(), l.end(), c) != l.end()) ++c;
  auto plane = ps.span({0, 1, c});
  EXPECT_EQ(plane.dim, 2);
  auto pts = ps.points_of(plane);
  EXPECT_EQ(pts.size(), 7u);
  EXPECT_EQ(ps.lines_of(plane).size(), 7u);
  for (auto x : pts) EXPECT_TRUE(ps.contains(plane, x));
  auto single = ps.span({5});
  EXPECT_EQ(ps.points_of(single).size(), 1u);
  EXPECT_EQ(ps.lines_of(single).size(), 0u);
}

TEST(Affine, AG33LineCount) {
  AffineSpace as(gf::make_field(3, 1), 3);
  auto lines = as.all_lines();
  EXPECT_EQ(lines.size(), 27u * 26 / 6);
  check_unique_line_per_pair(as.num_points(), lines);
}

TEST(Affine, AG34UniqueLines) {
  AffineSpace as(gf::make_field(2, 2), 3);
  auto lines = as.all_lines();
  EXPECT_EQ(lines.size(), 336u);
  check_unique_line_per_pair(as.num_points(), lines);
}

TEST(Affine, LineParametrizationInvariance) {
  AffineSpace as(gf::make_field(3, 1), 3);
  const auto& k = as.field();
  auto y = as.vec(4), z = as.vec(17);
  auto dir = vec_sub(k, z, y);
  auto z2 = vec_add(k, y, vec_scale(k, k.from_int(2), dir));
  EXPECT_EQ(as.line(4, 17), as.line(4, as.id_of(z2)));
}

TEST(Affine, PlaneSpans) {
  AffineSpace as(gf::make_field(2, 2), 3);
  auto plane = as.span({0, 1, 4});  // z = 0 plane: vectors (0,0,0), (0,0,1)? use ids
  EXPECT_EQ(plane.dim, 2);
  auto pts = as.points_of(plane);
  EXPECT_EQ(pts.size(), 16u);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (auto x : as.line(pts[i], pts[j])) EXPECT_TRUE(as.contains(plane, x));
  AffineSpace a2(gf::make_field(2, 1), 3);
  EXPECT_EQ(a2.points_of(a2.span({0, 1, 2})).size(), 4u);
  AffineSpace a3(gf::make_field(3, 1), 3);
  auto p3 = a3.span({0, 1, 3});
  EXPECT_EQ(a3.points_of(p3).size(), 9u);
  EXPECT_EQ(a3.lines_of(p3).size(), 12u);
}

TEST(Affine, MeetDimension) {
  AffineSpace as(gf::make_field(3, 1), 3);
  auto p1 = as.span({0, 1, 3});      // x0 = 0
  auto p2 = as.span({0, 1, 9});      // x1 = 0
  auto p3 = as.span({9, 10, 12});    // x0 = 1 parallel to p1
  EXPECT_EQ(affine_meet_dim(as.field(), p1, p2), 1);
  EXPECT_EQ(affine_meet_dim(as.field(), p1, p3), -1);
  EXPECT_EQ(affine_meet_dim(as.field(), p1, p1), 2);
}

TEST(Groups, PGammaL32Order168) {
  auto gens = group_gens(GroupKind::PGammaL, 3, gf::make_field(2, 1));
  perm::PermGroup g(gens);
  EXPECT_EQ(g.order(), 168u);
  ProjectiveSpace ps(gf::make_field(2, 1), 2);
  for (const auto& x : gens) EXPECT_TRUE(maps_lines_to_lines(x, ps.all_lines()));
}

TEST(Groups, PGammaL34Order120960) {
  auto k = gf::make_field(2, 2);
  auto pgl = perm::PermGroup(group_gens(GroupKind::PGL, 3, k));
  auto pgaml = perm::PermGroup(group_gens(GroupKind::PGammaL, 3, k));
  EXPECT_EQ(pgl.order(), 60480u);
  EXPECT_EQ(pgaml.order(), 120960u);
  ProjectiveSpace ps(k, 2);
  for (const auto& x : pgaml.generators()) EXPECT_TRUE(maps_lines_to_lines(x, ps.all_lines()));
}

TEST(Groups, AGammaL24Order5760) {
  auto k = gf::make_field(2, 2);
  perm::PermGroup g(group_gens(GroupKind::AGammaL, 2, k));
  EXPECT_EQ(g.order(), 5760u);
  AffineSpace as(k, 2);
  for (const auto& x : g.generators()) EXPECT_TRUE(maps_lines_to_lines(x, as.all_lines()));
}

TEST(Groups, MoreClassicalOrders) {
  // |PGL(3,3)| = 5616, |PGL(4,2)| = 20160, |AGL(3,3)| = 27 * 11232
  EXPECT_EQ(perm::PermGroup(group_gens(GroupKind::PGammaL, 3, gf::make_field(3, 1))).order(), 5616u);
  EXPECT_EQ(perm::PermGroup(group_gens(GroupKind::PGL, 4, gf::make_field(2, 1))).order(), 20160u);
  EXPECT_EQ(perm::PermGroup(group_gens(GroupKind::AGL, 3, gf::make_field(3, 1))).order(), 303264u);
  EXPECT_EQ(perm::PermGroup(group_gens(GroupKind::AGammaL, 2, gf::make_field(3, 1))).order(), 432u);
}

TEST(Tower, ProjectiveNormalizationAndLines) {
  auto t = gf::make_tower(2, 2);
  TowerSpace ts(t, 2);  // PG(3,2) via F = GF(4), n = 2
  std::set<TowerSpace::Id> pts;
  for (std::uint64_t code = 1; code < 16; ++code) pts.insert(ts.proj_id(ts.decode(code)));
  EXPECT_EQ(pts.size(), 15u);
  for (auto id : pts) EXPECT_EQ(ts.proj_id(ts.decode(id)), id);
  std::set<std::vector<TowerSpace::Id>> lines;
  for (auto a : pts)
    for (auto b : pts)
      if (a != b) lines.insert(ts.proj_line(ts.decode(a), ts.decode(b)));
  EXPECT_EQ(lines.size(), 35u);
}

TEST(Tower, KExpansionRoundTrip) {
  auto t = gf::make_tower(3, 3);
  TowerSpace ts(t, 2);
  for (std::uint64_t code = 0; code < 27 * 27; code += 7) {
    auto v = ts.decode(code);
    EXPECT_EQ(ts.encode(v), code);
    EXPECT_EQ(ts.from_k(ts.k_expand(v)), v);
  }
  // affine lines have q points and the span of a plane has q^2
  auto y = ts.decode(5), z = ts.decode(100), w = ts.decode(301);
  EXPECT_EQ(ts.aff_line(y, z).size(), 3u);
  auto basis = ts.k_basis({ts.sub(z, y), ts.sub(w, y)});
  EXPECT_EQ(ts.aff_points_of_span(y, basis).size(), 9u);
}
