#include <gtest/gtest.h>

#include <random>
#include <set>

#include "autdesign/perm.hpp"

using namespace autd;
using namespace autd::perm;

namespace {

// Closure by breadth-first multiplication; independent of the chain.
std::set<Perm> brute_closure(const std::vector<Perm>& gens) {
  std::set<Perm> seen{Perm::identity(gens[0].degree())};
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = x * g;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

bool is_even(const Perm& p) {
  int transpositions = 0;
  for (const auto& c : p.cycles()) transpositions += static_cast<int>(c.size()) - 1;
  return transpositions % 2 == 0;
}

}  // namespace

TEST(Perm, RightActionConvention) {
  auto a = Perm::from_cycles(3, {{0, 1}});
  auto b = Perm::from_cycles(3, {{1, 2}});
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(Perm, TextRoundTrip) {
  auto p = Perm::from_cycles(5, {{0, 3, 1}});
  EXPECT_EQ(p.to_string(), "deg 5: 3 0 2 1 4");
  EXPECT_EQ(Perm::parse(p.to_string()), p);
  EXPECT_THROW(Perm::parse("deg 3: 0 0 1"), Error);
  EXPECT_THROW(Perm::parse("deg 3: 0 1"), Error);
  auto gs = parse_group_text("# comment\ndeg 3: 1 2 0\n\ndeg 3: 1 0 2\n");
  EXPECT_EQ(gs.size(), 2u);
  EXPECT_THROW(parse_group_text("deg 3: 1 2 0\ndeg 2: 1 0\n"), Error);
}

TEST(PermGroup, S3) {
  PermGroup g(3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.elements().size(), 6u);
}

TEST(PermGroup, IdentityGenerator) {
  PermGroup g(4, {Perm::identity(4)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.contains(Perm::identity(4)));
}

TEST(PermGroup, AlternatingMembership) {
  PermGroup a4(4, {Perm::from_cycles(4, {{0, 1, 2}}), Perm::from_cycles(4, {{1, 2, 3}})});
  EXPECT_EQ(a4.order(), 12u);
  EXPECT_FALSE(a4.contains(Perm::from_cycles(4, {{0, 1}})));
  std::vector<std::uint32_t> img{0, 1, 2, 3};
  do {
    Perm p(img);
    EXPECT_EQ(a4.contains(p), is_even(p));
  } while (std::next_permutation(img.begin(), img.end()));
}

TEST(PermGroup, OrdersMatchBruteClosure) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 3 + trial % 6;
    std::vector<Perm> gens;
    for (int i = 0; i < 1 + trial % 3; ++i) {
      std::vector<std::uint32_t> img(n);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      // keep some groups small by using sparse perms
      if (trial % 2) {
        std::iota(img.begin(), img.end(), 0u);
        std::swap(img[rng() % n], img[rng() % n]);
      }
      gens.emplace_back(img);
    }
    PermGroup g(n, gens);
    auto closure = brute_closure(gens);
    EXPECT_EQ(g.order(), closure.size());
    for (const auto& x : closure) EXPECT_TRUE(g.contains(x));
    // |G| divides n!
    std::uint64_t f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    EXPECT_EQ(f % g.order(), 0u);
  }
}

TEST(PermGroup, MembershipClosedUnderProducts) {
  // dihedral group of order 16 on 8 points
  PermGroup d8(8, {Perm::from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}}), Perm::from_cycles(8, {{1, 7}, {2, 6}, {3, 5}})});
  EXPECT_EQ(d8.order(), 16u);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto g = d8.random_element(rng), h = d8.random_element(rng);
    EXPECT_TRUE(d8.contains(g * h));
  }
}

TEST(PermGroup, OrbitsPartitionDomain) {
  PermGroup g(7, {Perm::from_cycles(7, {{0, 1}, {2, 3, 4}})});
  auto orbs = g.orbits();
  std::size_t total = 0;
  for (const auto& o : orbs) total += o.size();
  EXPECT_EQ(total, 7u);
  EXPECT_EQ(orbs.size(), 4u);
}

TEST(PermGroup, BasePrefixRespected) {
  PermGroup s4(4, {Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 1}})}, {3});
  EXPECT_EQ(s4.base()[0], 3u);
  EXPECT_EQ(s4.order(), 24u);
}

TEST(PermGroup, DegreeMismatch) {
  try {
    PermGroup g(3, {Perm::identity(4)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegreeMismatch);
  }
  PermGroup g(3, {Perm::from_cycles(3, {{0, 1}})});
  EXPECT_THROW(g.contains(Perm::identity(4)), Error);
}

TEST(Semiregular, Examples) {
  PermGroup c3(3, {Perm::from_cycles(3, {{0, 1, 2}})});
  EXPECT_TRUE(semiregular(c3));
  PermGroup s3(3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})});
  auto r = semiregular(s3);
  ASSERT_FALSE(r);
  ASSERT_TRUE(r.failure);
  EXPECT_FALSE(r.failure->element.is_identity());
  EXPECT_EQ(r.failure->element[r.failure->point], r.failure->point);
  PermGroup c2(4, {Perm::from_cycles(4, {{0, 1}, {2, 3}})});
  EXPECT_TRUE(semiregular(c2));
}

TEST(Semiregular, LargeGroupUsesStabilizer) {
  // C_101 x C_103 acting regularly on 101*103 points would be huge; use
  // the regular action of C_n with n > 10^4 instead.
  const std::uint32_t n = 10007;
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = (i + 1) % n;
  PermGroup g(n, {Perm(img)});
  auto r = semiregular(g);
  ASSERT_TRUE(r);
  EXPECT_EQ(r.cert->method, "orbit-size");
  // S_8 is not semiregular and is larger than 10^4
  PermGroup s8(8, {Perm::from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}}), Perm::from_cycles(8, {{0, 1}})});
  auto f = semiregular(s8);
  ASSERT_FALSE(f);
  EXPECT_EQ(f.failure->element[f.failure->point], f.failure->point);
}

TEST(GroupsEqual, Examples) {
  PermGroup a(6, {Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}}), Perm::from_cycles(6, {{1, 5}, {2, 4}})});
  EXPECT_TRUE(groups_equal(a, a));
  PermGroup c2(6, {Perm::from_cycles(6, {{0, 1}, {2, 3}, {4, 5}})});
  PermGroup c3(6, {Perm::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})});
  EXPECT_FALSE(groups_equal(c2, c3));
  // same dihedral group from reflections only
  PermGroup b(6, {Perm::from_cycles(6, {{1, 5}, {2, 4}}), Perm::from_cycles(6, {{0, 1}, {2, 5}, {3, 4}})});
  EXPECT_TRUE(groups_equal(a, b));
  PermGroup other(5, {Perm::identity(5)});
  EXPECT_THROW(groups_equal(a, other), Error);
}
