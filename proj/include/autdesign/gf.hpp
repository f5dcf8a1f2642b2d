#pragma once

// Finite fields GF(p^m) in discrete-log form with Zech-logarithm addition,
// and subfield tower embeddings GF(q) ⊂ GF(q^s).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autdesign/error.hpp"

namespace autd::gf {

/// Largest field we build tables for.
inline constexpr std::uint32_t kMaxFieldSize = 65536;
/// Largest field on which exhaustive self-checks are run.
inline constexpr std::uint32_t kMaxVerifiedFieldSize = 4096;

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// If q = p^m for a prime p, returns {p, m}.
inline std::optional<std::pair<std::uint32_t, int>> prime_power(std::uint32_t q) {
  if (q < 2) return std::nullopt;
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  int m = 0;
  std::uint32_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) return std::nullopt;
  return std::pair{p, m};
}

/// A field element: either zero or θ^log with log in [0, |F| - 1).
struct Elem {
  std::int32_t log = -1;

  constexpr bool is_zero() const { return log < 0; }
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem a, Elem b) { return a.log <=> b.log; }
};

inline constexpr Elem kZero{-1};
inline constexpr Elem kOne{0};

/// GF(p^m) with a primitive modulus; θ is the class of x. Immutable once
/// built, so a `const Field&` may be shared across threads.
class Field {
 public:
  /// Builds GF(p^m). Without a modulus the primitive polynomial with the
  /// smallest integer encoding Σ c_i p^i is chosen.
  /// `modulus` holds c_0..c_m (length m + 1, c_m ≠ 0).
  Field(std::uint32_t p, int m, std::optional<std::vector<int>> modulus = std::nullopt)
      : p_(p), m_(m) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t size = 1;
    for (int i = 0; i < m; ++i) {
      size *= p;
      if (size > kMaxFieldSize)
        throw Error(Errc::SizeLimit, "field larger than " + std::to_string(kMaxFieldSize));
    }
    size_ = static_cast<std::uint32_t>(size);
    order_ = size_ - 1;

    if (modulus) {
      auto c = *modulus;
      if (static_cast<int>(c.size()) != m + 1)
        throw Error(Errc::InvalidArgument, "modulus must have m + 1 coefficients");
      for (auto& x : c) x = ((x % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p);
      if (c[m] == 0) throw Error(Errc::InvalidArgument, "modulus has degree < m");
      int lead_inv = inv_mod_p(c[m]);
      for (auto& x : c) x = static_cast<int>((static_cast<std::int64_t>(x) * lead_inv) % p);
      if (!try_build(c)) {
        if (!irreducible(c))
          throw Error(Errc::NotIrreducible, "supplied modulus is reducible");
        throw Error(Errc::NotPrimitive, "x does not generate the multiplicative group");
      }
      modulus_ = c;
    } else {
      std::vector<int> c(m + 1, 0);
      c[m] = 1;
      const std::uint32_t candidates = size_;
      bool found = false;
      for (std::uint32_t code = 0; code < candidates && !found; ++code) {
        std::uint32_t r = code;
        for (int i = 0; i < m; ++i) {
          c[i] = static_cast<int>(r % p);
          r /= p;
        }
        if (try_build(c)) {
          modulus_ = c;
          found = true;
        }
      }
      if (!found) throw Error(Errc::NotPrimitive, "no primitive polynomial found");
    }
    build_zech();
  }

  std::uint32_t p() const { return p_; }
  int m() const { return m_; }
  std::uint32_t size() const { return size_; }
  /// Multiplicative order of θ, i.e. |F| - 1.
  std::uint32_t theta_order() const { return order_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem theta() const { return Elem{order_ == 1 ? 0 : 1}; }
  Elem theta_pow(std::int64_t k) const { return Elem{static_cast<std::int32_t>(mod(k))}; }

  Elem add(Elem a, Elem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::uint32_t d = mod(static_cast<std::int64_t>(b.log) - a.log);
    std::int32_t z = zech_[d];
    if (z < 0) return kZero;
    return Elem{static_cast<std::int32_t>(mod(static_cast<std::int64_t>(a.log) + z))};
  }
  Elem neg(Elem a) const {
    if (a.is_zero() || p_ == 2) return a;
    return Elem{static_cast<std::int32_t>(mod(static_cast<std::int64_t>(a.log) + order_ / 2))};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.is_zero() || b.is_zero()) return kZero;
    return Elem{static_cast<std::int32_t>(mod(static_cast<std::int64_t>(a.log) + b.log))};
  }
  Elem inv(Elem a) const {
    if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    return Elem{static_cast<std::int32_t>(mod(-static_cast<std::int64_t>(a.log)))};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const {
    if (a.is_zero()) {
      if (e == 0) return kOne;
      if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
      return kZero;
    }
    const std::int64_t n = order_;
    const std::int64_t r = ((e % n) + n) % n;
    return Elem{static_cast<std::int32_t>((static_cast<std::int64_t>(a.log) * r) % n)};
  }
  /// Frobenius x -> x^p.
  Elem frobenius(Elem a, int times = 1) const {
    Elem r = a;
    for (int i = 0; i < times; ++i) r = pow(r, p_);
    return r;
  }

  /// Coefficient view: Σ c_i p^i where a = Σ c_i θ^i.
  std::uint32_t to_packed(Elem a) const { return a.is_zero() ? 0u : exp_[a.log]; }
  Elem from_packed(std::uint32_t v) const { return Elem{log_[v]}; }
  std::vector<int> coeffs(Elem a) const {
    std::vector<int> c(m_);
    std::uint32_t v = to_packed(a);
    for (int i = 0; i < m_; ++i) {
      c[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    return c;
  }
  Elem from_coeffs(const std::vector<int>& c) const {
    std::uint32_t v = 0;
    for (int i = m_ - 1; i >= 0; --i) {
      int ci = i < static_cast<int>(c.size()) ? c[i] : 0;
      ci = ((ci % static_cast<int>(p_)) + static_cast<int>(p_)) % static_cast<int>(p_);
      v = v * p_ + static_cast<std::uint32_t>(ci);
    }
    return from_packed(v);
  }
  /// The image of an integer under Z -> GF(p) -> F.
  Elem from_int(std::int64_t k) const {
    const std::int64_t r = ((k % static_cast<std::int64_t>(p_)) + p_) % p_;
    return from_packed(static_cast<std::uint32_t>(r));
  }
  /// Elements in packed order 0, 1, ..., |F| - 1.
  std::vector<Elem> elements() const {
    std::vector<Elem> out(size_);
    for (std::uint32_t v = 0; v < size_; ++v) out[v] = from_packed(v);
    return out;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint32_t mod(std::int64_t k) const {
    const std::int64_t n = order_;
    return static_cast<std::uint32_t>(((k % n) + n) % n);
  }

  int inv_mod_p(int a) const {
    for (int x = 1; x < static_cast<int>(p_); ++x)
      if ((static_cast<std::int64_t>(a) * x) % p_ == 1) return x;
    throw Error(Errc::DivisionByZero, "coefficient not invertible mod p");
  }

  std::uint32_t packed_add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  // Multiplies a packed polynomial by x modulo `c`.
  std::uint32_t times_x(std::uint32_t v, const std::vector<int>& c) const {
    std::vector<int> d(m_);
    for (int i = 0; i < m_; ++i) {
      d[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    const int top = d[m_ - 1];
    for (int i = m_ - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    // x^m ≡ -(c_0 + ... + c_{m-1} x^{m-1})
    const int pi = static_cast<int>(p_);
    for (int i = 0; i < m_; ++i) d[i] = ((d[i] - top * c[i]) % pi + pi) % pi;
    std::uint32_t out = 0;
    for (int i = m_ - 1; i >= 0; --i) out = out * p_ + static_cast<std::uint32_t>(d[i]);
    return out;
  }

  // Fills exp/log tables if x is primitive modulo c.
  bool try_build(const std::vector<int>& c) {
    if (c[0] == 0) return false;
    std::vector<std::uint32_t> exp(order_);
    std::vector<std::int32_t> log(size_, -1);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < order_; ++i) {
      if (log[cur] != -1) return false;
      exp[i] = cur;
      log[cur] = static_cast<std::int32_t>(i);
      cur = m_ == 1 ? static_cast<std::uint32_t>(((p_ - static_cast<std::uint32_t>(c[0])) % p_ * cur) % p_)
                    : times_x(cur, c);
    }
    if (cur != 1) return false;
    exp_ = std::move(exp);
    log_ = std::move(log);
    return true;
  }

  bool irreducible(const std::vector<int>& c) const {
    // Trial division by every monic polynomial of degree 1..m/2.
    const int pi = static_cast<int>(p_);
    for (int d = 1; 2 * d <= m_; ++d) {
      std::uint64_t count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<int> g(d + 1, 0);
        g[d] = 1;
        std::uint64_t r = code;
        for (int i = 0; i < d; ++i) {
          g[i] = static_cast<int>(r % p_);
          r /= p_;
        }
        std::vector<int> rem = c;
        for (int k = m_; k >= d; --k) {
          int f = rem[k];
          if (f == 0) continue;
          for (int i = 0; i <= d; ++i) rem[k - d + i] = ((rem[k - d + i] - f * g[i]) % pi + pi) % pi;
        }
        bool zero = true;
        for (int i = 0; i < d; ++i) zero = zero && rem[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void build_zech() {
    zech_.assign(order_, -1);
    for (std::uint32_t i = 0; i < order_; ++i) {
      std::uint32_t s = packed_add(1u, exp_[i]);
      zech_[i] = log_[s];
    }
  }

  std::uint32_t p_;
  int m_;
  std::uint32_t size_ = 0;
  std::uint32_t order_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> zech_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(std::uint32_t p, int m,
                           std::optional<std::vector<int>> modulus = std::nullopt) {
  return std::make_shared<const Field>(p, m, std::move(modulus));
}

/// Minimal polynomial over GF(p) of `a` in F, as coefficients c_0..c_d.
inline std::vector<int> minimal_polynomial(const Field& f, Elem a) {
  std::vector<Elem> conj{a};
  for (Elem b = f.frobenius(a); b != a; b = f.frobenius(b)) conj.push_back(b);
  // Π (x - β) expanded in F; coefficients land in the prime field.
  std::vector<Elem> poly{kOne};
  for (Elem beta : conj) {
    std::vector<Elem> next(poly.size() + 1, kZero);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], poly[i]);
      next[i] = f.add(next[i], f.mul(f.neg(beta), poly[i]));
    }
    poly = std::move(next);
  }
  std::vector<int> out;
  for (Elem c : poly) {
    std::uint32_t v = f.to_packed(c);
    if (v >= f.p()) throw Error(Errc::NotASubfield, "minimal polynomial left the prime field");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// Embedding of K = GF(q) into F = GF(q^s), plus the K-coordinates of F
/// elements in the basis 1, θ, ..., θ^{s-1}.
struct TowerEmbedding {
  FieldPtr sub;
  FieldPtr sup;
  int s = 1;                    // [F : K]
  std::uint32_t e = 1;          // (|F| - 1) / (|K| - 1)
  std::int64_t generator_image_log = 0;  // θ_K ↦ θ_F^generator_image_log
  std::vector<Elem> map;        // indexed by K packed value
  std::vector<std::int32_t> back;  // F packed -> K log, or -2 when outside K

  Elem to_sup(Elem k) const { return map[sub->to_packed(k)]; }
  bool in_sub(Elem f) const { return back[sup->to_packed(f)] != -2; }
  Elem to_sub(Elem f) const {
    std::int32_t v = back[sup->to_packed(f)];
    if (v == -2) throw Error(Errc::NotASubfield, "element is not in the subfield");
    return Elem{v};
  }

  /// K-coordinates c_0..c_{s-1} of x = Σ c_i θ^i.
  const Elem* k_coords(Elem x) const { return &kc_[static_cast<std::size_t>(sup->to_packed(x)) * s]; }
  Elem from_k_coords(const Elem* c) const {
    Elem x = kZero;
    for (int i = 0; i < s; ++i) x = sup->add(x, sup->mul(to_sup(c[i]), sup->theta_pow(i)));
    return x;
  }

  std::vector<Elem> kc_;
};

/// Builds the embedding and verifies it is a ring homomorphism (exhaustively
/// for subfields up to kMaxVerifiedFieldSize).
inline TowerEmbedding embed(FieldPtr sub, FieldPtr sup) {
  if (sub->p() != sup->p() || sup->m() % sub->m() != 0)
    throw Error(Errc::NotASubfield, "GF(" + std::to_string(sub->size()) + ") does not embed in GF(" +
                                        std::to_string(sup->size()) + ")");
  TowerEmbedding t;
  t.sub = sub;
  t.sup = sup;
  t.s = sup->m() / sub->m();
  t.e = sup->theta_order() / sub->theta_order();

  // θ_F^e has order |K| - 1; pick the conjugate that is a root of K's modulus.
  const auto& mod = sub->modulus();
  auto is_root = [&](Elem g) {
    Elem acc = kZero;
    for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i)
      acc = sup->add(sup->mul(acc, g), sup->from_int(mod[i]));
    return acc.is_zero();
  };
  std::int64_t exp = t.e % static_cast<std::int64_t>(sup->theta_order());
  bool found = false;
  for (int j = 0; j < sub->m() && !found; ++j) {
    if (is_root(sup->theta_pow(exp))) {
      found = true;
      break;
    }
    exp = (exp * sup->p()) % sup->theta_order();
  }
  if (!found) throw Error(Errc::NotASubfield, "no root of the subfield modulus in the larger field");
  t.generator_image_log = exp;

  t.map.assign(sub->size(), kZero);
  t.back.assign(sup->size(), -2);
  for (std::uint32_t v = 0; v < sub->size(); ++v) {
    Elem k = sub->from_packed(v);
    Elem img = k.is_zero() ? kZero : sup->pow(sup->theta_pow(exp), k.log);
    t.map[v] = img;
    t.back[sup->to_packed(img)] = k.log;
  }

  if (sub->size() <= kMaxVerifiedFieldSize) {
    for (std::uint32_t a = 0; a < sub->size(); ++a)
      for (std::uint32_t b = 0; b < sub->size(); ++b) {
        Elem x = sub->from_packed(a), y = sub->from_packed(b);
        if (t.to_sup(sub->add(x, y)) != sup->add(t.to_sup(x), t.to_sup(y)) ||
            t.to_sup(sub->mul(x, y)) != sup->mul(t.to_sup(x), t.to_sup(y)))
          throw Error(Errc::NotASubfield, "embedding is not a homomorphism");
      }
  }

  // K-coordinate table over the θ-power basis, filled by enumerating K^s.
  const std::uint32_t q = sub->size();
  t.kc_.assign(static_cast<std::size_t>(sup->size()) * t.s, kZero);
  std::vector<bool> seen(sup->size(), false);
  std::vector<Elem> c(t.s);
  std::uint64_t total = 1;
  for (int i = 0; i < t.s; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t r = code;
    for (int i = 0; i < t.s; ++i) {
      c[i] = sub->from_packed(static_cast<std::uint32_t>(r % q));
      r /= q;
    }
    Elem x = t.from_k_coords(c.data());
    std::uint32_t px = sup->to_packed(x);
    if (seen[px]) throw Error(Errc::NotASubfield, "θ-powers are not a basis over the subfield");
    seen[px] = true;
    for (int i = 0; i < t.s; ++i) t.kc_[static_cast<std::size_t>(px) * t.s + i] = c[i];
  }
  return t;
}

/// Builds K = GF(p^{m_sub}) inside `sup` with modulus the minimal polynomial
/// of θ^e, so that the embedding sends θ_K to θ_F^e exactly.
inline TowerEmbedding make_tower(std::uint32_t q, int s,
                                 std::optional<std::vector<int>> sup_modulus = std::nullopt) {
  auto pp = prime_power(q);
  if (!pp) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
  auto [p, m] = *pp;
  auto sup = make_field(p, m * s, std::move(sup_modulus));
  const std::uint32_t e = sup->theta_order() / (q - 1);
  auto sub_mod = minimal_polynomial(*sup, sup->theta_pow(e));
  auto sub = make_field(p, m, sub_mod);
  return embed(sub, sup);
}

}  // namespace autd::gf
