#include <gtest/gtest.h>

#include <random>
#include <set>

#include "autdesign/canon.hpp"
#include "autdesign/geom.hpp"

using namespace autd;
using namespace autd::canon;

namespace {

Incidence from_blocks(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& blocks) {
  Incidence s;
  s.n_points = n;
  s.blocks = blocks;
  return s;
}

perm::Perm random_perm(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return perm::Perm(img);
}

Incidence random_structure(std::uint32_t n, std::size_t nblocks, std::uint32_t k, std::mt19937_64& rng) {
  Incidence s;
  s.n_points = n;
  for (std::size_t i = 0; i < nblocks; ++i) {
    std::vector<std::uint32_t> pts(n);
    std::iota(pts.begin(), pts.end(), 0u);
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(k);
    s.blocks.push_back(pts);
  }
  return s;
}

// Brute force over all n! bijections.
std::uint64_t brute_aut_count(const Incidence& s) {
  std::vector<std::uint32_t> img(s.n_points);
  std::iota(img.begin(), img.end(), 0u);
  std::uint64_t c = 0;
  const auto base = normalized(s);
  do {
    if (normalized(relabel(s, perm::Perm(img))).blocks == base.blocks) ++c;
  } while (std::next_permutation(img.begin(), img.end()));
  return c;
}

bool brute_isomorphic(const Incidence& a, const Incidence& b) {
  std::vector<std::uint32_t> img(a.n_points);
  std::iota(img.begin(), img.end(), 0u);
  const auto nb = normalized(b);
  do {
    if (normalized(relabel(a, perm::Perm(img))).blocks == nb.blocks) return true;
  } while (std::next_permutation(img.begin(), img.end()));
  return false;
}

}  // namespace

TEST(Canon, EmptyBlockListIsStable) {
  auto a = canonical_form(from_blocks(3, {}));
  auto b = canonical_form(from_blocks(3, {}));
  EXPECT_EQ(a.bytes, b.bytes);
  EXPECT_EQ(aut_group(from_blocks(3, {})).order(), 6u);
}

TEST(Canon, RelabelInvarianceOnPG32) {
  geom::ProjectiveSpace ps(gf::make_field(2, 1), 3);
  auto s = from_blocks(15, ps.all_lines());
  auto base = canonical_form(s);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto g = random_perm(15, rng);
    EXPECT_EQ(canonical_form(relabel(s, g)).bytes, base.bytes);
  }
}

TEST(Canon, AutPG32Is20160) {
  geom::ProjectiveSpace ps(gf::make_field(2, 1), 3);
  auto s = from_blocks(15, ps.all_lines());
  auto cf = canonical_form(s);
  for (const auto& g : cf.automorphisms) EXPECT_TRUE(is_automorphism(s, g));
  EXPECT_EQ(perm::PermGroup(15, cf.automorphisms).order(), 20160u);
}

TEST(Canon, AutAG33Is303264) {
  geom::AffineSpace as(gf::make_field(3, 1), 3);
  auto s = from_blocks(27, as.all_lines());
  auto g = aut_group(s);
  EXPECT_EQ(g.order(), 303264u);
  for (const auto& x : g.generators()) EXPECT_TRUE(is_automorphism(s, x));
}

TEST(Canon, AutPG33AndAG34) {
  geom::ProjectiveSpace ps(gf::make_field(3, 1), 3);
  EXPECT_EQ(aut_group(from_blocks(40, ps.all_lines())).order(), 12130560u);
  geom::AffineSpace as(gf::make_field(2, 2), 3);
  // |AΓL(3,4)| = 64 * |GL(3,4)| * 2
  EXPECT_EQ(aut_group(from_blocks(64, as.all_lines())).order(), 64ull * 181440 * 2);
}

TEST(Canon, DistinctPointColorsGiveTrivialGroup) {
  geom::ProjectiveSpace ps(gf::make_field(2, 1), 3);
  auto s = from_blocks(15, ps.all_lines());
  s.point_colors.resize(15);
  std::iota(s.point_colors.begin(), s.point_colors.end(), 0u);
  EXPECT_EQ(aut_group(s).order(), 1u);
}

TEST(Canon, MatchesBruteForceOnSmallRandomStructures) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t n = 4 + t % 4;
    auto a = random_structure(n, 2 + t % 5, 2 + t % 2, rng);
    auto b = t % 3 == 0 ? relabel(a, random_perm(n, rng)) : random_structure(n, 2 + t % 5, 2 + t % 2, rng);
    const bool iso = brute_isomorphic(a, b);
    auto fa = canonical_form(a), fb = canonical_form(b);
    EXPECT_EQ(fa.bytes == fb.bytes, iso) << "trial " << t;
    auto m = find_iso(a, b);
    EXPECT_EQ(m.has_value(), iso);
    if (m) EXPECT_EQ(normalized(relabel(a, *m)).blocks, normalized(b).blocks);
    EXPECT_EQ(aut_group(a).order(), brute_aut_count(a)) << "trial " << t;
  }
}

TEST(Canon, FindIsoRecoversRelabeling) {
  geom::AffineSpace as(gf::make_field(3, 1), 2);
  auto s = from_blocks(9, as.all_lines());
  std::mt19937_64 rng(2);
  auto g = random_perm(9, rng);
  auto t = relabel(s, g);
  auto m = find_iso(s, t);
  ASSERT_TRUE(m);
  EXPECT_EQ(normalized(relabel(s, *m)).blocks, normalized(t).blocks);
  auto self = find_iso(s, s);
  ASSERT_TRUE(self);
  EXPECT_TRUE(is_automorphism(s, *self));
}

TEST(Canon, ColorsSeparateStructures) {
  auto a = from_blocks(4, {{0, 1}, {1, 2}, {2, 3}});
  auto b = a;
  a.point_colors = {1, 0, 0, 0};
  b.point_colors = {0, 1, 0, 0};
  EXPECT_NE(canonical_form(a).bytes, canonical_form(b).bytes);
  b.point_colors = {0, 0, 0, 1};
  EXPECT_EQ(canonical_form(a).bytes, canonical_form(b).bytes);
}

TEST(Canon, SizeLimit) {
  Incidence s;
  s.n_points = 6000;
  try {
    canonical_form(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SizeLimit);
  }
}
