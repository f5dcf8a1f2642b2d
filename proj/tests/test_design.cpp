#include <gtest/gtest.h>

#include <random>

#include "autdesign/design.hpp"
#include "autdesign/geom.hpp"
#include "autdesign/twist.hpp"

using namespace autd;
using namespace autd::design;

namespace {

Design pg_lines(int d, std::uint32_t q) {
  auto pp = gf::prime_power(q);
  geom::ProjectiveSpace ps(gf::make_field(pp->first, pp->second), d);
  return normalize(Design{ps.num_points(), ps.all_lines()});
}

}  // namespace

TEST(Coverage, ProjectiveLinesCoverEachPairOnce) {
  auto d = pg_lines(3, 2);
  auto r = check_pair_coverage(d);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.checked, 105u);
  auto d3 = pg_lines(3, 3);
  auto r3 = check_pair_coverage(d3);
  EXPECT_TRUE(r3.ok);
  EXPECT_EQ(r3.checked, 780u);
}

TEST(Coverage, DetectsMissingAndDoubledPairs) {
  auto d = pg_lines(2, 2);
  auto missing = d;
  missing.blocks.pop_back();
  EXPECT_FALSE(check_pair_coverage(missing).ok);
  auto doubled = d;
  doubled.blocks.push_back(d.blocks.front());
  auto r = check_pair_coverage(doubled);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.counterexample.find("2 blocks"), std::string::npos);
}

TEST(Coverage, AffinePlanesOfOrderSixteenFormAnSqs) {
  auto d = twist::ag2_4_2();
  EXPECT_EQ(d.blocks.size(), 140u);
  auto r = check_triple_coverage(d);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.checked, 560u);
  auto broken = d;
  broken.blocks[0] = broken.blocks[1];
  EXPECT_FALSE(check_triple_coverage(broken).ok);
}

TEST(PairIndex, FindsTheUniqueBlock) {
  auto d = pg_lines(3, 2);
  PairIndex idx(d);
  for (std::uint32_t a = 0; a < d.v; ++a)
    for (std::uint32_t b = 0; b < d.v; ++b) {
      if (a == b) continue;
      const auto& blk = idx.block(a, b);
      EXPECT_TRUE(std::binary_search(blk.begin(), blk.end(), a));
      EXPECT_TRUE(std::binary_search(blk.begin(), blk.end(), b));
    }
  EXPECT_THROW(idx.block(3, 3), Error);
  auto bad = d;
  bad.blocks.push_back(d.blocks.front());
  EXPECT_THROW(PairIndex{bad}, Error);
}

// In a projective or affine point-line design ⟨x|y,z⟩ is the plane on x, y, z.
TEST(XyzUnion, IsThePlaneInClassicalSpaces) {
  for (std::uint32_t q : {2u, 3u}) {
    auto pp = gf::prime_power(q);
    geom::ProjectiveSpace ps(gf::make_field(pp->first, pp->second), 3);
    Design d = normalize(Design{ps.num_points(), ps.all_lines()});
    PairIndex idx(d);
    auto block = [&](std::uint32_t a, std::uint32_t b) { return idx.block(a, b); };
    std::mt19937_64 rng(q);
    for (int t = 0; t < 40; ++t) {
      std::uint32_t x = rng() % d.v, y = rng() % d.v, z = rng() % d.v;
      if (x == y || x == z || y == z) continue;
      auto yz = idx.block(y, z);
      if (std::binary_search(yz.begin(), yz.end(), x)) {
        EXPECT_THROW(xyz_union<std::uint32_t>(block, x, y, z), Error);
        continue;
      }
      auto got = xyz_union<std::uint32_t>(block, x, y, z);
      auto plane = ps.points_of(ps.span({x, y, z}));
      std::sort(plane.begin(), plane.end());
      EXPECT_EQ(got, plane);
    }
  }
  auto pp = gf::prime_power(3);
  geom::AffineSpace as(gf::make_field(pp->first, pp->second), 3);
  Design d = normalize(Design{as.num_points(), as.all_lines()});
  PairIndex idx(d);
  auto block = [&](std::uint32_t a, std::uint32_t b) { return idx.block(a, b); };
  std::mt19937_64 rng(9);
  int checked = 0;
  while (checked < 30) {
    std::uint32_t x = rng() % d.v, y = rng() % d.v, z = rng() % d.v;
    if (x == y || x == z || y == z) continue;
    auto yz = idx.block(y, z);
    if (std::binary_search(yz.begin(), yz.end(), x)) continue;
    auto plane = as.points_of(as.span({x, y, z}));
    std::sort(plane.begin(), plane.end());
    EXPECT_EQ(xyz_union<std::uint32_t>(block, x, y, z), plane);
    ++checked;
  }
}

// In AG₂(4,2), ⟨w|x,y,z⟩ is the affine 3-space on w, x, y, z without
// x+y+z; the block xyz supplies the missing point.
TEST(WxyzUnion, IsTheSolidInAffinePlanes) {
  auto d = twist::ag2_4_2();
  auto block = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    for (const auto& blk : d.blocks)
      if (std::binary_search(blk.begin(), blk.end(), a) && std::binary_search(blk.begin(), blk.end(), b) &&
          std::binary_search(blk.begin(), blk.end(), c))
        return blk;
    throw Error(Errc::InvalidArgument, "no block");
  };
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 30) {
    std::uint32_t w = rng() % 16, x = rng() % 16, y = rng() % 16, z = rng() % 16;
    if (std::set<std::uint32_t>{w, x, y, z}.size() < 4) continue;
    auto xyz = block(x, y, z);
    if (std::binary_search(xyz.begin(), xyz.end(), w)) {
      EXPECT_THROW(wxyz_union<std::uint32_t>(block, w, x, y, z), Error);
      continue;
    }
    auto got = wxyz_union<std::uint32_t>(block, w, x, y, z);
    // Affine span over GF(2): all sums of an odd number of the four points.
    std::set<std::uint32_t> solid;
    const std::uint32_t p[4] = {w, x, y, z};
    for (int m = 1; m < 16; ++m)
      if (__builtin_popcount(m) % 2) {
        std::uint32_t s = 0;
        for (int i = 0; i < 4; ++i)
          if (m >> i & 1) s ^= p[i];
        solid.insert(s);
      }
    EXPECT_EQ(got.size(), 7u);
    EXPECT_FALSE(std::binary_search(got.begin(), got.end(), x ^ y ^ z));
    std::set<std::uint32_t> closed(got.begin(), got.end());
    closed.insert(xyz.begin(), xyz.end());
    EXPECT_EQ(closed, solid);
    ++checked;
  }
}

TEST(DesignFile, RoundTripAndRejections) {
  auto d = pg_lines(2, 3);
  auto back = parse_design(format_design(d));
  EXPECT_EQ(back.v, d.v);
  EXPECT_EQ(back.blocks, d.blocks);
  EXPECT_THROW(parse_design("7 1"), Error);
  EXPECT_THROW(parse_design("7 1 3\n0 1\n"), Error);
  EXPECT_THROW(parse_design("7 1 3\n0 2 1\n"), Error);
  EXPECT_THROW(parse_design("7 1 3\n0 1 9\n"), Error);
  EXPECT_THROW(parse_design("7 1 3\n0 1 x\n"), Error);
  EXPECT_THROW(parse_design("7 1 3\n0 1 2\n3 4 5\n"), Error);
  EXPECT_THROW(parse_design("7 2 3\n0 1 2\n"), Error);
}
