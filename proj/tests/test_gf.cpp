#include <gtest/gtest.h>

#include "autdesign/gf.hpp"

using namespace autd;
using namespace autd::gf;

namespace {

// Naive polynomial arithmetic over GF(p), modulo a monic modulus c0..cm.
struct PolyOracle {
  std::uint32_t p;
  std::vector<int> mod;
  int m() const { return static_cast<int>(mod.size()) - 1; }

  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> r(2 * m(), 0);
    for (int i = 0; i < m(); ++i)
      for (int j = 0; j < m(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % static_cast<int>(p);
    for (int d = 2 * m() - 1; d >= m(); --d) {
      int c = r[d];
      if (!c) continue;
      for (int i = 0; i <= m(); ++i)
        r[d - m() + i] = ((r[d - m() + i] - c * mod[i]) % static_cast<int>(p) + static_cast<int>(p)) % static_cast<int>(p);
    }
    r.resize(m());
    return r;
  }
  std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> r(m());
    for (int i = 0; i < m(); ++i) r[i] = (a[i] + b[i]) % static_cast<int>(p);
    return r;
  }
  std::vector<int> x() const {
    std::vector<int> r(m(), 0);
    if (m() == 1) r[0] = (static_cast<int>(p) - mod[0]) % static_cast<int>(p);
    else r[1] = 1;
    return r;
  }
  std::vector<int> one() const {
    std::vector<int> r(m(), 0);
    r[0] = 1;
    return r;
  }
  // Multiplicative order of x, or 0 if x is nilpotent / a zero divisor chain.
  std::uint32_t order_of_x(std::uint32_t limit) const {
    auto v = x();
    for (std::uint32_t k = 1; k <= limit; ++k) {
      if (v == one()) return k;
      v = mul(v, x());
    }
    return 0;
  }
};

std::uint32_t code_of(const std::vector<int>& c, std::uint32_t p) {
  std::uint32_t r = 0;
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * p + c[i];
  return r;
}

// Smallest-code modulus with x of full order, by brute force.
std::vector<int> brute_primitive(std::uint32_t p, int m) {
  std::uint32_t size = 1;
  for (int i = 0; i < m; ++i) size *= p;
  for (std::uint32_t code = 0; code < size; ++code) {
    std::vector<int> c(m + 1, 0);
    c[m] = 1;
    std::uint32_t r = code;
    for (int i = 0; i < m; ++i) {
      c[i] = r % p;
      r /= p;
    }
    if (c[0] == 0) continue;
    PolyOracle o{p, c};
    if (o.order_of_x(size - 1) == size - 1) return c;
  }
  return {};
}

}  // namespace

TEST(Field, DefaultModulusIsSmallestPrimitive) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 2}, {2, 6}}) {
    Field f(p, m);
    auto expected = brute_primitive(p, m);
    EXPECT_EQ(f.modulus(), expected) << p << "^" << m;
  }
}

TEST(Field, GF16Basics) {
  Field f(2, 4);
  EXPECT_EQ(f.size(), 16u);
  EXPECT_EQ(f.theta_order(), 15u);
  EXPECT_EQ(f.modulus(), (std::vector<int>{1, 1, 0, 0, 1}));
  // θ^4 = θ + 1
  EXPECT_EQ(f.theta_pow(4), f.add(f.theta(), kOne));
  EXPECT_EQ(f.pow(f.theta(), 15), kOne);
  Elem naive = kOne;
  for (int i = 0; i < 15; ++i) naive = f.mul(naive, f.theta());
  EXPECT_EQ(naive, kOne);
}

TEST(Field, PrimeFieldGF2) {
  Field f(2, 1);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.theta_order(), 1u);
  EXPECT_EQ(f.theta(), kOne);
}

TEST(Field, GF27ThetaOrder) {
  Field f(3, 3);
  EXPECT_EQ(f.size(), 27u);
  PolyOracle o{3, f.modulus()};
  EXPECT_EQ(o.order_of_x(26), 26u);
}

TEST(Field, ArithmeticMatchesPolynomialOracle) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, int>>{{2, 4}, {3, 2}, {3, 3}, {5, 2}, {2, 3}, {7, 1}}) {
    Field f(p, m);
    PolyOracle o{p, f.modulus()};
    for (std::uint32_t a = 0; a < f.size(); ++a)
      for (std::uint32_t b = 0; b < f.size(); ++b) {
        Elem x = f.from_packed(a), y = f.from_packed(b);
        auto cx = f.coeffs(x), cy = f.coeffs(y);
        EXPECT_EQ(f.coeffs(f.add(x, y)), o.add(cx, cy));
        EXPECT_EQ(f.coeffs(f.mul(x, y)), o.mul(cx, cy));
      }
  }
}

TEST(Field, RingAxiomsAndInverse) {
  Field f(3, 2);
  for (Elem a : f.elements()) {
    EXPECT_EQ(f.mul(a, kZero), kZero);
    EXPECT_EQ(f.add(a, kZero), a);
    EXPECT_EQ(f.add(a, f.neg(a)), kZero);
    if (!a.is_zero()) {
      EXPECT_EQ(f.mul(a, f.inv(a)), kOne);
      EXPECT_EQ(f.pow(a, f.theta_order()), kOne);
    }
  }
  EXPECT_THROW(f.inv(kZero), Error);
}

TEST(Field, PowersOfThetaDistinctAndFermat) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, int>>{{2, 12}, {3, 7}, {2, 4}}) {
    Field f(p, m);
    std::vector<bool> seen(f.size(), false);
    for (std::uint32_t i = 0; i < f.theta_order(); ++i) {
      auto c = f.to_packed(f.theta_pow(i));
      EXPECT_FALSE(seen[c]);
      seen[c] = true;
    }
    for (Elem a : f.elements())
      if (!a.is_zero()) ASSERT_EQ(f.pow(a, f.theta_order()), kOne);
  }
}

TEST(Field, Errors) {
  try {
    Field f(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPrime);
  }
  try {
    Field f(2, 2, std::vector<int>{1, 0, 1});  // x^2 + 1 = (x+1)^2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotIrreducible);
  }
  try {
    Field f(2, 4, std::vector<int>{1, 1, 1, 1, 1});  // irreducible, x has order 5
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPrimitive);
  }
}

TEST(Tower, PrimeSubfieldOfGF16) {
  auto t = embed(make_field(2, 1), make_field(2, 4));
  EXPECT_EQ(t.s, 4);
  EXPECT_EQ(t.e, 15u);
  EXPECT_EQ(t.to_sup(kZero), kZero);
  EXPECT_EQ(t.to_sup(kOne), kOne);
}

TEST(Tower, GF3inGF27GeneratorImage) {
  auto t = make_tower(3, 3);
  EXPECT_EQ(t.e, 13u);
  EXPECT_EQ(t.to_sup(t.sub->theta()), t.sup->theta_pow(13));
  EXPECT_EQ(t.sup->pow(t.sup->theta_pow(13), 2), kOne);
}

TEST(Tower, GF4inGF64) {
  auto t = make_tower(4, 3);
  EXPECT_EQ(t.e, 21u);
  EXPECT_EQ(t.to_sup(t.sub->theta()), t.sup->theta_pow(21));
}

TEST(Tower, HomomorphismAndCoordinatesRoundTrip) {
  for (auto [q, s] : std::vector<std::pair<std::uint32_t, int>>{{2, 4}, {3, 3}, {4, 3}, {4, 2}, {3, 4}}) {
    auto t = make_tower(q, s);
    const auto& K = *t.sub;
    const auto& F = *t.sup;
    for (Elem a : K.elements())
      for (Elem b : K.elements()) {
        EXPECT_EQ(t.to_sup(K.add(a, b)), F.add(t.to_sup(a), t.to_sup(b)));
        EXPECT_EQ(t.to_sup(K.mul(a, b)), F.mul(t.to_sup(a), t.to_sup(b)));
      }
    for (Elem x : F.elements()) EXPECT_EQ(t.from_k_coords(t.k_coords(x)), x);
    // The image is exactly the set of fixed points of x ↦ x^q.
    std::size_t fixed = 0;
    for (Elem x : F.elements()) {
      bool is_fixed = F.pow(x, q) == x || x.is_zero();
      fixed += is_fixed;
      EXPECT_EQ(is_fixed, t.in_sub(x));
    }
    EXPECT_EQ(fixed, q);
  }
}

TEST(Tower, NotASubfield) {
  try {
    embed(make_field(2, 2), make_field(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotASubfield);
  }
}
