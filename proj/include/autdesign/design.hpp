#pragma once

// Materialized designs: exhaustive coverage checks, pair lookup, the
// block-defined point sets used to recover geometry, and the design file
// format.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "autdesign/canon.hpp"
#include "autdesign/error.hpp"

namespace autd::design {

using Block = std::vector<std::uint32_t>;

struct Design {
  std::uint32_t v = 0;
  std::vector<Block> blocks;

  std::uint32_t block_size() const { return blocks.empty() ? 0 : static_cast<std::uint32_t>(blocks[0].size()); }
  canon::Incidence incidence() const {
    canon::Incidence s;
    s.n_points = v;
    s.blocks = blocks;
    return s;
  }
};

/// Sorts each block and the block list.
inline Design normalize(Design d) {
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());
  std::sort(d.blocks.begin(), d.blocks.end());
  return d;
}

struct CoverageResult {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string counterexample;
};

/// Every pair of points lies in exactly one block.
inline CoverageResult check_pair_coverage(const Design& d) {
  const std::uint32_t n = d.v;
  std::vector<std::uint8_t> cnt(static_cast<std::size_t>(n) * n, 0);
  for (const auto& b : d.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        auto& c = cnt[static_cast<std::size_t>(std::min(b[i], b[j])) * n + std::max(b[i], b[j])];
        if (c < 255) ++c;
      }
  CoverageResult r;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) {
      ++r.checked;
      const auto c = cnt[static_cast<std::size_t>(a) * n + b];
      if (c != 1 && r.ok) {
        r.ok = false;
        r.counterexample = "pair {" + std::to_string(a) + "," + std::to_string(b) + "} lies in " + std::to_string(c) + " blocks";
      }
    }
  return r;
}

/// Every triple of points lies in exactly one block.
inline CoverageResult check_triple_coverage(const Design& d) {
  const std::uint64_t n = d.v;
  std::vector<std::uint8_t> cnt(n * n * n, 0);
  for (const auto& b : d.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        for (std::size_t k = j + 1; k < b.size(); ++k) {
          std::uint32_t t[3] = {b[i], b[j], b[k]};
          std::sort(t, t + 3);
          auto& c = cnt[(t[0] * n + t[1]) * n + t[2]];
          if (c < 255) ++c;
        }
  CoverageResult r;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c) {
        ++r.checked;
        const auto x = cnt[(a * n + b) * n + c];
        if (x != 1 && r.ok) {
          r.ok = false;
          r.counterexample = "triple {" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                             "} lies in " + std::to_string(x) + " blocks";
        }
      }
  return r;
}

/// Block lookup by point pair for a 2-design with λ = 1.
class PairIndex {
 public:
  explicit PairIndex(const Design& d) : d_(&d), n_(d.v), table_(static_cast<std::size_t>(d.v) * d.v, -1) {
    for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
      const auto& b = d.blocks[bi];
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
          if (i != j) {
            auto& slot = table_[static_cast<std::size_t>(b[i]) * n_ + b[j]];
            if (slot >= 0 && slot != static_cast<std::int32_t>(bi))
              throw Error(Errc::InvalidArgument, "two blocks share a pair");
            slot = static_cast<std::int32_t>(bi);
          }
    }
  }

  const Block& block(std::uint32_t y, std::uint32_t z) const {
    if (y == z) throw Error(Errc::EqualPoints, "block through a repeated point");
    const auto bi = table_[static_cast<std::size_t>(y) * n_ + z];
    if (bi < 0) throw Error(Errc::InvalidArgument, "pair not covered");
    return d_->blocks[bi];
  }
  std::int32_t block_index(std::uint32_t y, std::uint32_t z) const { return table_[static_cast<std::size_t>(y) * n_ + z]; }
  std::uint32_t num_points() const { return n_; }

 private:
  const Design* d_;
  std::uint32_t n_;
  std::vector<std::int32_t> table_;
};

/// ⟨x|y,z⟩ from block queries only; `block(a, b)` returns the block through
/// a and b as a sorted point list.
template <class Point, class BlockFn>
std::vector<Point> xyz_union(BlockFn&& block, const Point& x, const Point& y, const Point& z) {
  const auto xy = block(x, y);
  const auto xz = block(x, z);
  const auto yz = block(y, z);
  if (std::binary_search(yz.begin(), yz.end(), x)) throw Error(Errc::PreconditionViolated, "x lies on the block yz");
  std::set<Point> out;
  for (const auto& y1 : xy) {
    if (y1 == x) continue;
    for (const auto& z1 : xz) {
      if (z1 == x || y1 == z1) continue;
      if ((y1 == y && z1 == z) || (y1 == z && z1 == y)) continue;
      for (const auto& p : block(y1, z1)) {
        if (p == x) continue;
        for (const auto& r : block(x, p)) out.insert(r);
      }
    }
  }
  return std::vector<Point>(out.begin(), out.end());
}

/// ⟨w|x,y,z⟩ for a 3-design; `block(a, b, c)` returns the block through
/// three points.
template <class Point, class BlockFn>
std::vector<Point> wxyz_union(BlockFn&& block, const Point& w, const Point& x, const Point& y, const Point& z) {
  const auto xyz = block(x, y, z);
  if (std::binary_search(xyz.begin(), xyz.end(), w)) throw Error(Errc::PreconditionViolated, "w lies on the block xyz");
  const auto wxy = block(w, x, y);
  const auto wxz = block(w, x, z);
  const auto wyz = block(w, y, z);
  auto in_xyz = [&](const Point& p) { return p == x || p == y || p == z; };
  std::set<Point> out;
  for (const auto& a : wxy) {
    if (a == w) continue;
    for (const auto& b : wxz) {
      if (b == w || b == a) continue;
      for (const auto& c : wyz) {
        if (c == w || c == a || c == b) continue;
        if (in_xyz(a) && in_xyz(b) && in_xyz(c)) continue;
        for (const auto& p : block(a, b, c)) out.insert(p);
      }
    }
  }
  return std::vector<Point>(out.begin(), out.end());
}

// Design file: `v b k`, then b lines of k ascending ids.
inline std::string format_design(const Design& d) {
  std::ostringstream os;
  os << d.v << ' ' << d.blocks.size() << ' ' << d.block_size() << '\n';
  for (const auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
    os << '\n';
  }
  return os.str();
}

inline Design parse_design(const std::string& text) {
  std::istringstream is(text);
  Design d;
  std::size_t b = 0, k = 0;
  if (!(is >> d.v >> b >> k)) throw Error(Errc::ParseError, "design header must be 'v b k'");
  std::string line;
  std::getline(is, line);
  for (std::size_t i = 0; i < b; ++i) {
    if (!std::getline(is, line)) throw Error(Errc::ParseError, "design file has fewer blocks than its header says");
    std::istringstream ls(line);
    Block blk;
    std::uint32_t x;
    while (ls >> x) blk.push_back(x);
    if (!ls.eof()) throw Error(Errc::ParseError, "non-numeric entry in block line " + std::to_string(i + 2));
    if (blk.size() != k) throw Error(Errc::ParseError, "block " + std::to_string(i) + " has the wrong size");
    for (std::size_t j = 0; j < blk.size(); ++j) {
      if (blk[j] >= d.v) throw Error(Errc::ParseError, "point id out of range in block " + std::to_string(i));
      if (j && blk[j] <= blk[j - 1]) throw Error(Errc::ParseError, "block entries must be strictly ascending");
    }
    d.blocks.push_back(std::move(blk));
  }
  if (is >> line) throw Error(Errc::ParseError, "trailing data after the last block");
  return d;
}

}  // namespace autd::design
