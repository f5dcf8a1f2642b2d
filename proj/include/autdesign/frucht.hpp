#pragma once

// Graphs whose full automorphism group is a prescribed finite group acting
// semiregularly on the vertices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "autdesign/canon.hpp"
#include "autdesign/error.hpp"
#include "autdesign/perm.hpp"

namespace autd::frucht {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

inline constexpr std::uint64_t kDefaultMaxGroupOrder = 60;
inline constexpr std::uint32_t kMinVertices = 6;

struct Graph {
  std::uint32_t n = 0;
  std::vector<Edge> edges;  // u < v, sorted
};

/// Connected 6-vertex graph with trivial automorphism group.
inline Graph asymmetric_six() {
  return Graph{6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {3, 5}}};
}

struct GammaGraph {
  Graph graph;
  perm::PermGroup g_action;  // the copy of G acting on vertices
  perm::SemiregularCert cert;
  std::string method;        // "asymmetric", "orbital" or "gadget"
};

inline canon::Incidence as_incidence(const Graph& g) {
  canon::Incidence s;
  s.n_points = g.n;
  for (auto [u, v] : g.edges) s.blocks.push_back({u, v});
  return s;
}

inline bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  std::vector<std::vector<std::uint32_t>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(g.n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::uint32_t count = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  return count == g.n;
}

/// Re-derives Aut Γ and semiregularity from scratch and checks them against
/// the claimed action of G.
inline GammaGraph verify_gamma(const Graph& g, const perm::PermGroup& action) {
  if (g.n < kMinVertices) throw Error(Errc::TooSmall, "graph has fewer than 6 vertices");
  for (auto [u, v] : g.edges)
    if (u >= v || v >= g.n) throw Error(Errc::InvalidArgument, "edge list is not simple and normalized");
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    throw Error(Errc::InvalidArgument, "repeated edge");
  if (!is_connected(g)) throw Error(Errc::NotConnected, "graph is disconnected");
  if (action.degree() != g.n) throw Error(Errc::DegreeMismatch, "group does not act on the graph's vertices");
  auto aut = canon::aut_group(as_incidence(g));
  if (!perm::groups_equal(aut, action))
    throw Error(Errc::AutMismatch, "Aut has order " + std::to_string(aut.order()) + ", expected " +
                                       std::to_string(action.order()));
  auto sr = perm::semiregular(action);
  if (!sr) throw Error(Errc::NotSemiregular, "point " + std::to_string(sr.failure->point) + " has a nontrivial stabilizer");
  GammaGraph out{g, action, *sr.cert, ""};
  return out;
}

namespace detail {

// G as an abstract group: element list, multiplication table, inverses.
struct GroupTable {
  std::vector<perm::Perm> elems;  // elems[0] is the identity
  std::vector<std::vector<std::uint32_t>> mul;  // mul[a][b] = index of a*b
  std::vector<std::uint32_t> inv;
  std::uint32_t size() const { return static_cast<std::uint32_t>(elems.size()); }
};

inline GroupTable table_of(const perm::PermGroup& G) {
  GroupTable t;
  auto el = G.elements();
  const auto id = perm::Perm::identity(G.degree());
  std::stable_partition(el.begin(), el.end(), [&](const perm::Perm& p) { return p == id; });
  std::map<perm::Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < el.size(); ++i) index[el[i]] = i;
  t.elems = std::move(el);
  const auto n = t.size();
  t.mul.assign(n, std::vector<std::uint32_t>(n));
  t.inv.resize(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      t.mul[a][b] = index.at(t.elems[a] * t.elems[b]);
      if (t.mul[a][b] == 0) t.inv[a] = b;
    }
  return t;
}

// Edge pattern (l1, l2, t): join (g, l1) and (g*t, l2) for every g. Vertex
// (g, l) has id l*|G| + g, and h ∈ G acts by (g, l) ↦ (h⁻¹g, l).
struct Pattern {
  std::uint32_t layers = 1;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
};

inline std::optional<Graph> realize(const GroupTable& t, const Pattern& p) {
  const auto n = t.size();
  Graph g;
  g.n = p.layers * n;
  for (auto [l1, l2, s] : p.edges)
    for (std::uint32_t x = 0; x < n; ++x) {
      std::uint32_t u = l1 * n + x, v = l2 * n + t.mul[x][s];
      if (u == v) return std::nullopt;
      g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) return std::nullopt;
  return g;
}

inline perm::PermGroup action_of(const GroupTable& t, const perm::PermGroup& G, std::uint32_t layers) {
  const auto n = t.size();
  std::map<perm::Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < n; ++i) index[t.elems[i]] = i;
  std::vector<perm::Perm> gens;
  for (const auto& h : G.generators()) {
    const std::uint32_t hi = t.inv[index.at(h)];
    std::vector<std::uint32_t> img(static_cast<std::size_t>(layers) * n);
    for (std::uint32_t l = 0; l < layers; ++l)
      for (std::uint32_t x = 0; x < n; ++x) img[l * n + x] = l * n + t.mul[hi][x];
    gens.emplace_back(std::move(img));
  }
  if (gens.empty()) gens.push_back(perm::Perm::identity(layers * n));
  return perm::PermGroup(layers * n, gens);
}

inline std::optional<GammaGraph> try_verify(const Graph& g, const perm::PermGroup& action, const std::string& method) {
  try {
    auto out = verify_gamma(g, action);
    out.method = method;
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Unions of G-orbits on vertex pairs of `layers` copies of the regular action.
inline std::optional<GammaGraph> orbital_search(const GroupTable& t, const perm::PermGroup& G, std::uint32_t layers,
                                                std::uint64_t budget, std::mt19937_64& rng) {
  const auto n = t.size();
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> orbitals;
  for (std::uint32_t l1 = 0; l1 < layers; ++l1)
    for (std::uint32_t l2 = l1; l2 < layers; ++l2)
      for (std::uint32_t s = 0; s < n; ++s) {
        if (l1 == l2 && (s == 0 || t.inv[s] < s)) continue;
        orbitals.emplace_back(l1, l2, s);
      }
  const auto action = action_of(t, G, layers);
  const std::size_t r = orbitals.size();
  auto attempt = [&](std::uint64_t mask_lo, const std::vector<char>* bits) -> std::optional<GammaGraph> {
    Pattern p;
    p.layers = layers;
    for (std::size_t i = 0; i < r; ++i) {
      const bool on = bits ? (*bits)[i] : ((mask_lo >> i) & 1);
      if (on) p.edges.push_back(orbitals[i]);
    }
    auto g = realize(t, p);
    if (!g || !is_connected(*g)) return std::nullopt;
    return try_verify(*g, action, "orbital");
  };
  if (r < 63 && (std::uint64_t{1} << r) <= budget) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask)
      if (auto res = attempt(mask, nullptr)) return res;
    return std::nullopt;
  }
  std::vector<char> bits(r);
  for (std::uint64_t it = 0; it < budget; ++it) {
    for (auto& b : bits) b = static_cast<char>(rng() & 1);
    if (auto res = attempt(0, &bits)) return res;
  }
  return std::nullopt;
}

// Cayley graph on `gens` with each directed s_i-edge u→v replaced by the path
// u-a-b-v, a tail of 2i+1 vertices hanging at a and one of 2i+2 at b.
inline std::optional<GammaGraph> gadget(const GroupTable& t, const perm::PermGroup& G,
                                        const std::vector<std::uint32_t>& gens) {
  Pattern p;
  std::uint32_t next = 1;
  auto tail = [&](std::uint32_t from, std::uint32_t len) {
    std::uint32_t prev = from;
    for (std::uint32_t k = 0; k < len; ++k) {
      p.edges.emplace_back(prev, next, 0);
      prev = next++;
    }
  };
  for (std::uint32_t i = 0; i < gens.size(); ++i) {
    const std::uint32_t a = next++, b = next++;
    p.edges.emplace_back(0, a, 0);
    p.edges.emplace_back(a, b, 0);
    p.edges.emplace_back(b, 0, gens[i]);
    tail(a, 2 * i + 1);
    tail(b, 2 * i + 2);
  }
  p.layers = next;
  auto g = realize(t, p);
  if (!g) return std::nullopt;
  return try_verify(*g, action_of(t, G, p.layers), "gadget");
}

}  // namespace detail

struct BuildOptions {
  std::uint64_t max_group_order = kDefaultMaxGroupOrder;
  std::uint64_t orbital_budget = 4096;
  std::uint32_t max_layers = 4;
  std::uint64_t seed = 1;
};

/// Builds Γ with Aut Γ equal to a semiregular copy of G. Small graphs from
/// unions of orbitals are preferred; the gadget construction is the fallback.
inline GammaGraph build_gamma(const perm::PermGroup& G, const BuildOptions& opt = {}) {
  const std::uint64_t order = G.order();
  if (order > opt.max_group_order)
    throw Error(Errc::GroupTooLarge, "|G| = " + std::to_string(order) + " exceeds " + std::to_string(opt.max_group_order));
  if (order == 1) {
    auto g = asymmetric_six();
    auto res = detail::try_verify(g, perm::PermGroup(g.n, {perm::Perm::identity(g.n)}), "asymmetric");
    if (!res) throw Error(Errc::ConstructionFailed, "stored asymmetric graph failed verification");
    return *res;
  }
  const auto table = detail::table_of(G);
  std::mt19937_64 rng(opt.seed);
  const std::uint32_t first = static_cast<std::uint32_t>(std::max<std::uint64_t>(2, (kMinVertices + order - 1) / order));
  for (std::uint32_t layers = first; layers <= opt.max_layers; ++layers)
    if (auto res = detail::orbital_search(table, G, layers, opt.orbital_budget, rng)) return *res;

  std::map<perm::Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < table.size(); ++i) index[table.elems[i]] = i;
  std::vector<std::uint32_t> gens;
  for (const auto& g : G.generators()) {
    auto i = index.at(g);
    if (i != 0 && std::find(gens.begin(), gens.end(), i) == gens.end()) gens.push_back(i);
  }
  if (auto res = detail::gadget(table, G, gens)) return *res;
  std::vector<std::uint32_t> all;
  for (std::uint32_t i = 1; i < table.size(); ++i) all.push_back(i);
  if (auto res = detail::gadget(table, G, all)) return *res;
  throw Error(Errc::ConstructionFailed, "no verified graph found for a group of order " + std::to_string(order));
}

// Text format: `n m` then m lines `u v`.
inline std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << g.n << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream is(text);
  Graph g;
  std::size_t m = 0;
  if (!(is >> g.n >> m)) throw Error(Errc::ParseError, "graph header must be 'n m'");
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t u, v;
    if (!(is >> u >> v)) throw Error(Errc::ParseError, "truncated edge list");
    if (u >= g.n || v >= g.n || u == v) throw Error(Errc::ParseError, "bad edge " + std::to_string(u) + " " + std::to_string(v));
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace autd::frucht
