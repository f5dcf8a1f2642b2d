#pragma once

// Canonical labeling and automorphism groups of colored incidence structures.
// The structure is viewed as a bipartite point/block graph; an ordered
// partition is refined to equitability and the search tree of
// individualizations is explored with trace comparison and automorphism
// pruning. Leaves are compared by the relabeled incidence rows, so equal
// certificates always mean isomorphic structures.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "autdesign/error.hpp"
#include "autdesign/perm.hpp"

namespace autd::canon {

inline constexpr std::size_t kDefaultSizeLimit = 5000;

/// Points 0..n_points-1 and a list of blocks. Empty color arrays mean a
/// single color.
struct Incidence {
  std::uint32_t n_points = 0;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint32_t> point_colors;
  std::vector<std::uint32_t> block_colors;
};

/// Sorts block entries and the block list, drops duplicate blocks of equal
/// color, and checks ranges.
inline Incidence normalized(Incidence s) {
  if (!s.point_colors.empty() && s.point_colors.size() != s.n_points)
    throw Error(Errc::InvalidArgument, "point color array has the wrong length");
  if (!s.block_colors.empty() && s.block_colors.size() != s.blocks.size())
    throw Error(Errc::InvalidArgument, "block color array has the wrong length");
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> bl;
  bl.reserve(s.blocks.size());
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    auto b = std::move(s.blocks[i]);
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw Error(Errc::InvalidArgument, "block repeats a point");
    if (!b.empty() && b.back() >= s.n_points) throw Error(Errc::InvalidArgument, "block entry out of range");
    bl.emplace_back(s.block_colors.empty() ? 0u : s.block_colors[i], std::move(b));
  }
  std::sort(bl.begin(), bl.end(), [](const auto& a, const auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
  bl.erase(std::unique(bl.begin(), bl.end()), bl.end());
  Incidence out;
  out.n_points = s.n_points;
  out.point_colors = std::move(s.point_colors);
  const bool colored = !s.block_colors.empty();
  for (auto& [c, b] : bl) {
    out.blocks.push_back(std::move(b));
    if (colored) out.block_colors.push_back(c);
  }
  return out;
}

/// The structure with every point x renamed g[x].
inline Incidence relabel(const Incidence& s, const perm::Perm& g) {
  if (g.degree() != s.n_points) throw Error(Errc::DegreeMismatch, "relabeling has the wrong degree");
  Incidence out;
  out.n_points = s.n_points;
  out.block_colors = s.block_colors;
  if (!s.point_colors.empty()) {
    out.point_colors.resize(s.n_points);
    for (std::uint32_t x = 0; x < s.n_points; ++x) out.point_colors[g[x]] = s.point_colors[x];
  }
  for (const auto& b : s.blocks) {
    std::vector<std::uint32_t> nb;
    nb.reserve(b.size());
    for (auto x : b) nb.push_back(g[x]);
    std::sort(nb.begin(), nb.end());
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

/// True iff g preserves point colors and maps blocks onto blocks of the same
/// color.
inline bool is_automorphism(const Incidence& s, const perm::Perm& g) {
  const Incidence a = normalized(s);
  const Incidence b = normalized(relabel(s, g));
  return a.point_colors == b.point_colors && a.blocks == b.blocks && a.block_colors == b.block_colors;
}

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct CanonicalForm {
  std::vector<std::uint8_t> bytes;
  perm::Perm relabeling;               // point -> canonical index
  std::vector<perm::Perm> automorphisms;  // generators, restricted to points
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;

  std::uint64_t hash() const { return fnv1a64(bytes.data(), bytes.size()); }
  std::string hash_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    std::uint64_t h = hash();
    for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 15];
    return s;
  }
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

struct Partition {
  std::vector<std::uint32_t> lab;    // position -> vertex
  std::vector<std::uint32_t> inv;    // vertex -> position
  std::vector<std::uint32_t> start;  // vertex -> start of its cell
  std::vector<std::uint32_t> end;    // cell start -> one past its end
  std::uint32_t ncells = 0;
};

class Searcher {
 public:
  explicit Searcher(const Incidence& s) : np_(s.n_points), nb_(static_cast<std::uint32_t>(s.blocks.size())) {
    n_ = np_ + nb_;
    std::vector<std::uint32_t> deg(n_, 0);
    for (std::uint32_t b = 0; b < nb_; ++b) {
      deg[np_ + b] = static_cast<std::uint32_t>(s.blocks[b].size());
      for (auto x : s.blocks[b]) ++deg[x];
    }
    off_.assign(n_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) off_[v + 1] = off_[v] + deg[v];
    adj_.resize(off_[n_]);
    std::vector<std::uint32_t> fill(off_.begin(), off_.end() - 1);
    for (std::uint32_t b = 0; b < nb_; ++b)
      for (auto x : s.blocks[b]) {
        adj_[fill[np_ + b]++] = x;
        adj_[fill[x]++] = np_ + b;
      }
    blocks_ = &s.blocks;

    // Initial ordered partition: points by color, then blocks by color.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> key(n_);
    for (std::uint32_t v = 0; v < n_; ++v) {
      std::uint64_t c = 0;
      if (v < np_) c = s.point_colors.empty() ? 0 : s.point_colors[v];
      else c = (std::uint64_t{1} << 32) | (s.block_colors.empty() ? 0u : s.block_colors[v - np_]);
      key[v] = {c, v};
    }
    std::sort(key.begin(), key.end());
    root_.lab.resize(n_);
    root_.inv.resize(n_);
    root_.start.resize(n_);
    root_.end.assign(n_ + 1, 0);
    std::uint32_t cs = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (i > 0 && key[i].first != key[i - 1].first) {
        root_.end[cs] = i;
        cs = i;
        ++root_.ncells;
      }
      root_.lab[i] = key[i].second;
      root_.inv[key[i].second] = i;
      root_.start[key[i].second] = cs;
      color_keys_.push_back(key[i].first);
    }
    if (n_ > 0) {
      root_.end[cs] = n_;
      ++root_.ncells;
    }

    cnt_.assign(n_, 0);
    tcount_.assign(n_ + 1, 0);
    mark_.assign(n_ + 1, 0);
    inq_.assign(n_ + 1, 0);
  }

  void run() {
    Partition p = root_;
    std::vector<std::uint32_t> q;
    for (std::uint32_t i = 0; i < n_; i = p.end[i]) q.push_back(i);
    std::uint64_t tr = refine(p, q);
    cur_trace_.assign(1, tr);
    path_.clear();
    search(0, p);
  }

  std::uint32_t n_points() const { return np_; }
  std::uint32_t n_blocks() const { return nb_; }
  const std::vector<std::uint32_t>& best_lab() const { return best_lab_; }
  const std::vector<std::vector<std::uint32_t>>& autos() const { return autos_; }
  const std::vector<std::uint32_t>& best_cert() const { return best_cert_; }
  const std::vector<std::uint64_t>& color_keys() const { return color_keys_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  // Refines to the coarsest equitable partition finer than p, using the
  // cells starting at `queue` as initial splitters. Returns a trace hash of
  // the splitting events.
  std::uint64_t refine(Partition& p, std::vector<std::uint32_t> queue) {
    std::uint64_t trace = 0x51ed270b27a4f1d3ULL;
    for (auto s : queue) inq_[s] = 1;
    std::size_t head = 0;
    std::vector<std::uint32_t> touched, cells, frag;
    while (head < queue.size() && p.ncells < n_) {
      const std::uint32_t s = queue[head++];
      inq_[s] = 0;
      const std::uint32_t e = p.end[s];
      touched.clear();
      for (std::uint32_t i = s; i < e; ++i) {
        const std::uint32_t w = p.lab[i];
        for (std::uint32_t k = off_[w]; k < off_[w + 1]; ++k) {
          const std::uint32_t u = adj_[k];
          if (cnt_[u]++ == 0) touched.push_back(u);
        }
      }
      cells.clear();
      for (auto u : touched) {
        const std::uint32_t c = p.start[u];
        if (!mark_[c]) {
          mark_[c] = 1;
          cells.push_back(c);
        }
        ++tcount_[c];
      }
      std::sort(cells.begin(), cells.end());
      for (auto c : cells) {
        const std::uint32_t ce = p.end[c];
        const std::uint32_t size = ce - c;
        bool uniform = tcount_[c] == size;
        if (uniform) {
          const std::uint32_t c0 = cnt_[p.lab[c]];
          for (std::uint32_t i = c + 1; i < ce && uniform; ++i) uniform = cnt_[p.lab[i]] == c0;
        }
        if (uniform || size == 1) {
          trace = mix(trace, (std::uint64_t{c} << 32) ^ cnt_[p.lab[c]]);
          continue;
        }
        std::sort(p.lab.begin() + c, p.lab.begin() + ce,
                  [&](std::uint32_t a, std::uint32_t b) { return cnt_[a] < cnt_[b]; });
        frag.clear();
        for (std::uint32_t i = c; i < ce; ++i) {
          p.inv[p.lab[i]] = i;
          if (i == c || cnt_[p.lab[i]] != cnt_[p.lab[i - 1]]) frag.push_back(i);
        }
        frag.push_back(ce);
        std::uint32_t largest = 0;
        for (std::size_t f = 0; f + 1 < frag.size(); ++f) {
          const std::uint32_t fs = frag[f], fe = frag[f + 1];
          p.end[fs] = fe;
          for (std::uint32_t i = fs; i < fe; ++i) p.start[p.lab[i]] = fs;
          trace = mix(trace, mix(fs, (std::uint64_t{cnt_[p.lab[fs]]} << 32) | (fe - fs)));
          if (fe - fs > frag[largest + 1] - frag[largest]) largest = static_cast<std::uint32_t>(f);
        }
        p.ncells += static_cast<std::uint32_t>(frag.size()) - 2;
        const bool was_queued = inq_[c];
        for (std::size_t f = 0; f + 1 < frag.size(); ++f) {
          const std::uint32_t fs = frag[f];
          if (inq_[fs]) continue;
          if (!was_queued && f == largest) continue;
          inq_[fs] = 1;
          queue.push_back(fs);
        }
      }
      for (auto u : touched) {
        cnt_[u] = 0;
      }
      for (auto c : cells) {
        mark_[c] = 0;
        tcount_[c] = 0;
      }
    }
    for (std::size_t i = head; i < queue.size(); ++i) inq_[queue[i]] = 0;
    return mix(trace, p.ncells);
  }

  std::uint32_t target_cell(const Partition& p) const {
    std::uint32_t best = n_, best_size = n_ + 1;
    for (std::uint32_t i = 0; i < n_; i = p.end[i]) {
      const std::uint32_t sz = p.end[i] - i;
      if (sz > 1 && sz < best_size) {
        best = i;
        best_size = sz;
      }
    }
    return best;
  }

  std::vector<std::uint32_t> cert_of(const Partition& p) const {
    std::vector<std::uint32_t> cert;
    cert.reserve(adj_.size() / 2 + nb_);
    std::vector<std::uint32_t> row;
    for (std::uint32_t pos = np_; pos < n_; ++pos) {
      const auto& b = (*blocks_)[p.lab[pos] - np_];
      row.clear();
      for (auto x : b) row.push_back(p.inv[x]);
      std::sort(row.begin(), row.end());
      cert.push_back(static_cast<std::uint32_t>(row.size()));
      cert.insert(cert.end(), row.begin(), row.end());
    }
    return cert;
  }

  // Lexicographic comparison of the current trace prefix with a stored one.
  static int compare_prefix(const std::vector<std::uint64_t>& cur, const std::vector<std::uint64_t>& ref) {
    const std::size_t m = std::min(cur.size(), ref.size());
    for (std::size_t i = 0; i < m; ++i)
      if (cur[i] != ref[i]) return cur[i] < ref[i] ? -1 : 1;
    if (cur.size() == ref.size()) return 0;
    return cur.size() < ref.size() ? 0 : 1;  // a shorter prefix is still undecided
  }

  static std::size_t diverge_level(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t l = 0;
    while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
    return l;
  }

  void record_auto(const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) {
    std::vector<std::uint32_t> g(n_);
    for (std::uint32_t i = 0; i < n_; ++i) g[from[i]] = to[i];
    bool trivial = true;
    for (std::uint32_t i = 0; i < n_ && trivial; ++i) trivial = g[i] == i;
    if (!trivial) autos_.push_back(std::move(g));
  }

  // Returns the level to resume at; a value below `level` unwinds further.
  std::size_t search(std::size_t level, const Partition& p) {
    ++nodes_;
    if (p.ncells == n_) return leaf(level, p);

    const std::uint32_t cs = target_cell(p);
    const std::uint32_t ce = p.end[cs];
    std::vector<std::uint32_t> cell(p.lab.begin() + cs, p.lab.begin() + ce);
    std::sort(cell.begin(), cell.end());

    std::vector<std::uint32_t> parent(n_);
    std::size_t autos_seen = static_cast<std::size_t>(-1);
    std::vector<char> explored_root(n_, 0);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto refresh_orbits = [&] {
      std::iota(parent.begin(), parent.end(), 0u);
      for (const auto& g : autos_) {
        bool fixes = true;
        for (auto v : path_)
          if (g[v] != v) {
            fixes = false;
            break;
          }
        if (!fixes) continue;
        for (auto x : cell) {
          auto a = find(x), b = find(g[x]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      autos_seen = autos_.size();
    };

    std::vector<std::uint32_t> done;
    for (auto v : cell) {
      if (autos_seen != autos_.size()) {
        refresh_orbits();
        std::fill(explored_root.begin(), explored_root.end(), 0);
        for (auto d : done) explored_root[find(d)] = 1;
      }
      if (explored_root[find(v)]) continue;
      explored_root[find(v)] = 1;
      done.push_back(v);

      Partition child = p;
      const std::uint32_t pos = child.inv[v];
      const std::uint32_t other = child.lab[cs];
      std::swap(child.lab[cs], child.lab[pos]);
      child.inv[other] = pos;
      child.inv[v] = cs;
      child.end[cs] = cs + 1;
      child.end[cs + 1] = ce;
      for (std::uint32_t i = cs + 1; i < ce; ++i) child.start[child.lab[i]] = cs + 1;
      child.start[v] = cs;
      ++child.ncells;
      const std::uint64_t tr = mix(refine(child, {cs}), cs);

      path_.push_back(v);
      cur_trace_.push_back(tr);
      bool visit = true;
      if (have_first_) {
        const bool eq_first = compare_prefix(cur_trace_, first_trace_) == 0;
        const int vs_best = compare_prefix(cur_trace_, best_trace_);
        if (!eq_first && vs_best > 0) visit = false;
      }
      std::size_t r = level + 1;
      if (visit) r = search(level + 1, child);
      path_.pop_back();
      cur_trace_.pop_back();
      if (r < level) return r;
    }
    return level;
  }

  std::size_t leaf(std::size_t level, const Partition& p) {
    ++leaves_;
    auto cert = cert_of(p);
    if (!have_first_) {
      have_first_ = true;
      first_lab_ = best_lab_ = p.lab;
      first_cert_ = best_cert_ = std::move(cert);
      first_trace_ = best_trace_ = cur_trace_;
      first_path_ = best_path_ = path_;
      return level;
    }
    if (compare_prefix(cur_trace_, first_trace_) == 0 && cert == first_cert_) {
      record_auto(first_lab_, p.lab);
      const std::size_t l = diverge_level(path_, first_path_);
      return l;
    }
    const int vs_best = compare_prefix(cur_trace_, best_trace_);
    if (vs_best == 0 && cur_trace_.size() == best_trace_.size()) {
      if (cert == best_cert_) {
        record_auto(best_lab_, p.lab);
        return diverge_level(path_, best_path_);
      }
      if (cert < best_cert_) {
        best_lab_ = p.lab;
        best_cert_ = std::move(cert);
        best_trace_ = cur_trace_;
        best_path_ = path_;
      }
    } else if (vs_best < 0) {
      best_lab_ = p.lab;
      best_cert_ = std::move(cert);
      best_trace_ = cur_trace_;
      best_path_ = path_;
    }
    return level;
  }

  std::uint32_t np_, nb_, n_ = 0;
  std::vector<std::uint32_t> off_, adj_;
  const std::vector<std::vector<std::uint32_t>>* blocks_ = nullptr;
  Partition root_;
  std::vector<std::uint64_t> color_keys_;

  std::vector<std::uint32_t> cnt_, tcount_;
  std::vector<char> mark_, inq_;

  std::vector<std::uint32_t> path_;
  std::vector<std::uint64_t> cur_trace_;
  bool have_first_ = false;
  std::vector<std::uint32_t> first_lab_, best_lab_, first_cert_, best_cert_, first_path_, best_path_;
  std::vector<std::uint64_t> first_trace_, best_trace_;
  std::vector<std::vector<std::uint32_t>> autos_;
  std::uint64_t nodes_ = 0, leaves_ = 0;
};

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace detail

inline CanonicalForm canonical_form(const Incidence& input, std::size_t size_limit = kDefaultSizeLimit) {
  const Incidence s = normalized(input);
  if (static_cast<std::size_t>(s.n_points) + s.blocks.size() > size_limit)
    throw Error(Errc::SizeLimit, "structure has " + std::to_string(s.n_points + s.blocks.size()) +
                                     " points+blocks, limit " + std::to_string(size_limit));
  detail::Searcher se(s);
  se.run();

  CanonicalForm out;
  out.nodes = se.nodes();
  out.leaves = se.leaves();
  const std::uint32_t np = s.n_points, nb = static_cast<std::uint32_t>(s.blocks.size());

  // Color histogram: counts of each (kind, color) class in position order.
  auto& bytes = out.bytes;
  detail::put_u32(bytes, np);
  detail::put_u32(bytes, nb);
  const auto& keys = se.color_keys();
  std::vector<std::pair<std::uint64_t, std::uint32_t>> hist;
  for (auto k : keys) {
    if (hist.empty() || hist.back().first != k) hist.emplace_back(k, 0);
    ++hist.back().second;
  }
  detail::put_u32(bytes, static_cast<std::uint32_t>(hist.size()));
  for (auto [k, c] : hist) {
    detail::put_u32(bytes, static_cast<std::uint32_t>(k >> 32));
    detail::put_u32(bytes, static_cast<std::uint32_t>(k));
    detail::put_u32(bytes, c);
  }
  // Incidence bitmap, one row of np bits per canonical block.
  const std::size_t row_bytes = (np + 7) / 8;
  const std::size_t base = bytes.size();
  bytes.resize(base + row_bytes * nb, 0);
  const auto& cert = se.best_cert();
  std::size_t at = 0;
  for (std::uint32_t b = 0; b < nb; ++b) {
    const std::uint32_t len = cert[at++];
    for (std::uint32_t i = 0; i < len; ++i) {
      const std::uint32_t x = cert[at++];
      bytes[base + b * row_bytes + x / 8] |= static_cast<std::uint8_t>(1u << (x % 8));
    }
  }

  std::vector<std::uint32_t> rel(np);
  const auto& lab = se.best_lab();
  for (std::uint32_t pos = 0; pos < np; ++pos) rel[lab[pos]] = pos;
  out.relabeling = perm::Perm(std::move(rel));

  for (const auto& g : se.autos()) {
    std::vector<std::uint32_t> img(g.begin(), g.begin() + np);
    perm::Perm pg(std::move(img));
    if (!pg.is_identity()) out.automorphisms.push_back(std::move(pg));
  }
  return out;
}

/// Full color-preserving automorphism group, acting on points.
inline perm::PermGroup aut_group(const Incidence& s, std::size_t size_limit = kDefaultSizeLimit) {
  auto cf = canonical_form(s, size_limit);
  return perm::PermGroup(s.n_points, cf.automorphisms);
}

/// A point bijection carrying the blocks (and colors) of a onto those of b.
inline std::optional<perm::Perm> find_iso(const Incidence& a, const Incidence& b,
                                          std::size_t size_limit = kDefaultSizeLimit) {
  if (a.n_points != b.n_points || a.blocks.size() != b.blocks.size()) return std::nullopt;
  auto ca = canonical_form(a, size_limit);
  auto cb = canonical_form(b, size_limit);
  if (ca.bytes != cb.bytes) return std::nullopt;
  return ca.relabeling * cb.relabeling.inverse();
}

}  // namespace autd::canon
