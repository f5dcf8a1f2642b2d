#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "autdesign/twist.hpp"

using namespace autd;
using namespace autd::twist;
using perm::Perm;

namespace {

Perm random_perm(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

// Colors X so that isomorphisms must map X onto X.
canon::Incidence x_colored(const TwistSpace& sp, const Design& d) {
  auto s = d.incidence();
  s.point_colors.assign(d.v, 0);
  for (auto x : sp.x_points()) s.point_colors[x] = 1;
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST(TwistSpace, SizesOfXAndLineSplit) {
  TwistSpace p2(Ambient::Projective, 3, 2);
  EXPECT_EQ(p2.num_points(), 15u);
  EXPECT_EQ(p2.x_size(), 7u);
  EXPECT_EQ(p2.lines_in_x().size(), 7u);
  EXPECT_EQ(p2.lines_off_x().size(), 28u);
  TwistSpace a3(Ambient::Affine, 3, 3);
  EXPECT_EQ(a3.num_points(), 27u);
  EXPECT_EQ(a3.x_size(), 9u);
  EXPECT_EQ(a3.lines_in_x().size(), 12u);
  EXPECT_EQ(a3.x_group().order(), 432u);
  EXPECT_EQ(p2.x_group().order(), 168u);
  TwistSpace p3(Ambient::Projective, 3, 3);
  EXPECT_EQ(p3.x_group().order(), 5616u);
  EXPECT_THROW(TwistSpace(Ambient::Affine, 3, 2), Error);
  EXPECT_THROW(TwistSpace(Ambient::Projective, 3, 6), Error);
}

TEST(TwistSpace, XGroupPreservesLinesOfX) {
  for (auto [amb, q] : {std::pair{Ambient::Projective, 3u}, std::pair{Ambient::Affine, 4u}}) {
    TwistSpace sp(amb, 3, q);
    std::set<std::vector<std::uint32_t>> lines;
    for (const auto& l : sp.lines_in_x()) {
      auto loc = sp.local(l);
      std::sort(loc.begin(), loc.end());
      lines.insert(loc);
    }
    for (const auto& g : sp.x_group_generators())
      for (const auto& l : lines) {
        std::vector<std::uint32_t> img;
        for (auto x : l) img.push_back(g[x]);
        std::sort(img.begin(), img.end());
        EXPECT_TRUE(lines.count(img));
      }
  }
}

TEST(BuildTwist, IdentityGivesTheClassicalDesign) {
  TwistSpace sp(Ambient::Projective, 3, 2);
  auto t = build_twist(sp, Perm::identity(7));
  EXPECT_EQ(t.design.blocks, sp.classical().blocks);
  EXPECT_THROW(build_twist(sp, Perm::identity(8)), Error);
}

// Every D_π is a 2-(v, q+1, 1) design, checked over all pairs.
TEST(BuildTwist, ExhaustivePairCoverage) {
  struct Case {
    Ambient amb;
    std::uint32_t q;
    std::uint64_t pairs;
  };
  std::mt19937_64 rng(11);
  for (auto c : {Case{Ambient::Projective, 2, 105}, Case{Ambient::Projective, 3, 780}, Case{Ambient::Affine, 3, 351},
                 Case{Ambient::Affine, 4, 2016}}) {
    TwistSpace sp(c.amb, 3, c.q);
    for (int t = 0; t < 5; ++t) {
      const auto t0 = std::chrono::steady_clock::now();
      auto d = build_twist(sp, random_perm(sp.x_size(), rng)).design;
      auto r = design::check_pair_coverage(d);
      EXPECT_LT(seconds_since(t0), 1.0);
      EXPECT_TRUE(r.ok) << r.counterexample;
      EXPECT_EQ(r.checked, c.pairs);
      EXPECT_EQ(d.block_size(), c.amb == Ambient::Projective ? c.q + 1 : c.q);
    }
  }
}

TEST(RecoverLines, RebuildsTheAmbientGeometry) {
  std::mt19937_64 rng(3);
  for (auto [amb, q] : {std::pair{Ambient::Projective, 2u}, std::pair{Ambient::Projective, 3u},
                        std::pair{Ambient::Affine, 3u}, std::pair{Ambient::Affine, 4u}}) {
    TwistSpace sp(amb, 3, q);
    auto d = build_twist(sp, random_perm(sp.x_size(), rng)).design;
    EXPECT_EQ(recover_ambient_lines(d, sp.x_points()), sp.classical().blocks);
  }
}

TEST(DoubleCoset, AgreesWithXPreservingIsomorphism) {
  std::mt19937_64 rng(2024);
  for (auto [amb, q, trials] : {std::tuple{Ambient::Projective, 2u, 24}, std::tuple{Ambient::Affine, 3u, 12}}) {
    TwistSpace sp(amb, 3, q);
    auto H = sp.x_group();
    int agree = 0, positive = 0;
    for (int t = 0; t < trials; ++t) {
      Perm pi = random_perm(sp.x_size(), rng);
      // Half the pairs are built inside one double coset.
      Perm pi2 = t % 2 ? random_perm(sp.x_size(), rng) : H.random_element(rng) * pi * H.random_element(rng);
      auto w = double_coset_test(pi, pi2, H);
      auto a = x_colored(sp, build_twist(sp, pi).design);
      auto b = x_colored(sp, build_twist(sp, pi2).design);
      auto iso = canon::find_iso(a, b);
      if (w) {
        EXPECT_EQ(pi * w->g, w->h * pi2);
        EXPECT_TRUE(H.contains(w->g));
        EXPECT_TRUE(H.contains(w->h));
        ++positive;
      }
      if (w.has_value() == iso.has_value()) ++agree;
    }
    EXPECT_EQ(agree, trials);
    EXPECT_GE(positive, trials / 2);
  }
}

TEST(DoubleCoset, TranspositionAndThreeCycleDifferForQ3) {
  TwistSpace sp(Ambient::Projective, 3, 3);
  auto H = sp.x_group();
  auto sigma = Perm::from_cycles(13, {{0, 1}});
  auto tau = Perm::from_cycles(13, {{0, 1, 2}});
  EXPECT_FALSE(double_coset_test(sigma, tau, H).has_value());
  EXPECT_TRUE(double_coset_test(sigma, sigma, H).has_value());
  auto ds = build_twist(sp, sigma).design, dt = build_twist(sp, tau).design;
  EXPECT_FALSE(canon::find_iso(ds.incidence(), dt.incidence()).has_value());
  EXPECT_THROW(double_coset_test(sigma, Perm::identity(7), H), Error);
}

TEST(CosetBound, ExactValues) {
  auto b = coset_bound(3, 2);
  EXPECT_EQ(b.numerator, 5040);
  EXPECT_EQ(b.denominator, 423360);
  EXPECT_EQ(b.reduced_num, 1);
  EXPECT_EQ(b.reduced_den, 84);
  EXPECT_EQ(b.text(), "5040/423360 = 1/84");
  // |PΓL(3,4)| = 120960, v_3 = 21, v_4 = 85.
  auto b4 = coset_bound(3, 4);
  EXPECT_EQ(b4.denominator, boost::multiprecision::cpp_int(85) * 120960 * 120960);
  EXPECT_THROW(coset_bound(2, 2), Error);
  EXPECT_THROW(coset_bound(3, 6), Error);
}

TEST(CosetBound, GroupOrdersMatchStabilizerChains) {
  TwistSpace sp(Ambient::Projective, 3, 2);
  EXPECT_EQ(sp.x_group().order(), 168u);
  EXPECT_EQ(canon::aut_group(sp.classical().incidence()).order(), 20160u);
}

TEST(DeltaProj, QThreeTranspositionAndThreeCycle) {
  TwistSpace sp(Ambient::Projective, 3, 3);
  auto ds = build_twist(sp, Perm::from_cycles(13, {{0, 1}})).design;
  auto dt = build_twist(sp, Perm::from_cycles(13, {{0, 1, 2}})).design;
  auto cs = canon::canonical_form(ds.incidence()), ct = canon::canonical_form(dt.incidence());
  auto cp = canon::canonical_form(sp.classical().incidence());
  EXPECT_NE(cs.bytes, ct.bytes);
  EXPECT_NE(cs.bytes, cp.bytes);
  EXPECT_NE(ct.bytes, cp.bytes);
  // Aut(D_σ) contains the elations with axis X and the swaps on ⟨x1,x2⟩, so
  // its generators share no fixed point.
  auto aut = canon::aut_group(ds.incidence());
  EXPECT_EQ(aut.order(), 3888u);
  EXPECT_TRUE(perm::common_fixed_points(aut).empty());
}

TEST(DeltaProj, QThreeFourCycleFixesAPoint) {
  auto dp = find_delta_proj(3);
  EXPECT_NE(dp.hash1, dp.hash2);
  EXPECT_NE(dp.hash1, dp.hash_classical);
  EXPECT_NE(dp.hash2, dp.hash_classical);
  EXPECT_FALSE(dp.aut1_fixed.empty());
  EXPECT_TRUE(design::check_pair_coverage(dp.delta1).ok);
  auto aut = canon::aut_group(dp.delta1.incidence());
  EXPECT_EQ(aut.order(), dp.aut1_order);
  for (const auto& g : aut.generators()) EXPECT_EQ(g[dp.support1[0]], dp.support1[0]);
}

TEST(DeltaProj, QTwoSearchFindsFixedPointDesign) {
  auto dp = find_delta_proj(2);
  EXPECT_EQ(dp.delta1.v, 15u);
  EXPECT_EQ(dp.delta1.blocks.size(), 35u);
  EXPECT_TRUE(design::check_pair_coverage(dp.delta1).ok);
  EXPECT_TRUE(design::check_pair_coverage(dp.delta2).ok);
  EXPECT_FALSE(dp.aut1_fixed.empty());
  EXPECT_NE(dp.hash1, dp.hash2);
  EXPECT_GT(dp.candidates_examined, 1u);
}

TEST(DeltaAff, QFourCycleIsRigidOnItsSupport) {
  auto dp = find_delta_aff(4);
  EXPECT_EQ(dp.delta1.v, 64u);
  ASSERT_EQ(dp.support1.size(), 4u);
  // Recompute Aut from scratch; every generator is the identity on the support.
  auto aut = canon::aut_group(dp.delta1.incidence());
  for (const auto& g : aut.generators())
    for (auto x : dp.support1) EXPECT_EQ(g[x], x);
  EXPECT_NE(dp.hash1, dp.hash2);
  EXPECT_NE(dp.hash1, dp.hash_classical);
}

TEST(DeltaAff, QThreeFixesTwoPoints) {
  auto dp = find_delta_aff(3);
  EXPECT_GE(dp.aut1_fixed.size(), 2u);
  EXPECT_NE(dp.hash1, dp.hash2);
  EXPECT_NE(dp.hash1, dp.hash_classical);
  EXPECT_NE(dp.hash2, dp.hash_classical);
}

TEST(DeltaSqs, SwitchingWalkKeepsTheSqsProperty) {
  SqsSearchOptions opt;
  opt.seed = 1;
  try {
    auto dp = find_delta_sqs(opt);
    EXPECT_TRUE(design::check_triple_coverage(dp.delta1).ok);
    EXPECT_TRUE(design::check_triple_coverage(dp.delta2).ok);
    EXPECT_EQ(dp.aut1_order, 1u);
    EXPECT_NE(dp.hash1, dp.hash2);
    EXPECT_FALSE(dp.move_log.empty());
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SearchBudgetExceeded);
  }
}
