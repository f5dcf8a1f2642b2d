#pragma once

// On-disk form of a construction: a JSON manifest plus plain-text Γ, group,
// Δ designs and the modified-set directory. Loading re-derives everything the
// manifest claims and rejects mismatches.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "autdesign/frucht.hpp"
#include "autdesign/steiner.hpp"
#include "autdesign/twist.hpp"
#include "json.hpp"

namespace autd::io {

inline constexpr const char* kToolVersion = "autdesign 1.0.0";

namespace fs = std::filesystem;
using nlohmann::json;

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + p.string());
  out << text;
}

/// Unsigned cap from the environment, or `fallback` when unset.
inline std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, std::string(name) + " is not a number");
  }
}

inline twist::Flavor parse_flavor(const std::string& s) {
  if (s == "proj") return twist::Flavor::Proj;
  if (s == "aff") return twist::Flavor::Aff;
  if (s == "sqs") return twist::Flavor::Sqs;
  throw Error(Errc::InvalidArgument, "flavor must be proj, aff or sqs");
}

inline json delta_certificate(const twist::DeltaPair& d) {
  return json{{"flavor", twist::flavor_name(d.flavor)},
              {"q", d.q},
              {"hash_delta1", d.hash1},
              {"hash_delta2", d.hash2},
              {"hash_classical", d.hash_classical},
              {"aut_order_delta1", d.aut1_order},
              {"aut_order_delta2", d.aut2_order},
              {"fixed_points_delta1", d.aut1_fixed},
              {"support_delta1", d.support1},
              {"provenance_delta1", d.provenance1},
              {"provenance_delta2", d.provenance2},
              {"candidates_examined", d.candidates_examined},
              {"seed", d.seed},
              {"switches", d.move_log}};
}

/// The Δ pair of one flavor; `seed` drives the SQS search only.
inline twist::DeltaPair find_deltas(twist::Flavor f, std::uint32_t q, std::uint64_t seed) {
  switch (f) {
    case twist::Flavor::Proj: return twist::find_delta_proj(q);
    case twist::Flavor::Aff:
      if (q <= 2) throw Error(Errc::InvalidSpec, "the affine construction needs q > 2");
      return twist::find_delta_aff(q);
    case twist::Flavor::Sqs: {
      if (q != 2) throw Error(Errc::InvalidSpec, "the SQS construction is over GF(2)");
      twist::SqsSearchOptions opt;
      opt.seed = seed;
      opt.max_moves = env_cap("AUTDESIGN_SQS_MAX_MOVES", opt.max_moves);
      return twist::find_delta_sqs(opt);
    }
  }
  throw Error(Errc::InvalidArgument, "unknown flavor");
}

inline json witness_json(const steiner::SharpWitness& w) {
  return json{{"relabel", w.relabel}, {"b1", w.b1}, {"b2", w.b2}};
}

inline steiner::SharpWitness witness_from(const json& j) {
  steiner::SharpWitness w;
  w.relabel = j.at("relabel").get<std::vector<std::uint32_t>>();
  w.b1 = j.at("b1").get<std::uint32_t>();
  w.b2 = j.at("b2").get<std::uint32_t>();
  return w;
}

inline json manifest_of(const steiner::DesignOracle& o) {
  const auto& in = o.inputs();
  const auto& t = o.tower();
  return json{{"tool_version", kToolVersion},
              {"flavor", twist::flavor_name(in.flavor)},
              {"q", in.q},
              {"s", t.s},
              {"modulus_K", t.sub->modulus()},
              {"modulus_F", t.sup->modulus()},
              {"points", o.num_points()},
              {"block_size", o.k()},
              {"gamma",
               {{"n", in.gamma.graph.n},
                {"m", in.gamma.graph.edges.size()},
                {"file", "gamma.txt"},
                {"method", in.gamma.method}}},
              {"group", {{"file", "group.txt"}, {"order", in.gamma.g_action.order()}}},
              {"delta",
               {{"hash_delta1", in.deltas.hash1},
                {"hash_delta2", in.deltas.hash2},
                {"files", {"delta1.txt", "delta2.txt"}},
                {"certificate", "delta_certificate.json"}}},
              {"witnesses", {witness_json(o.templ(1).witness), witness_json(o.templ(2).witness)}},
              {"sets", {{"file", "sets.txt"}, {"count", o.sets().size()}}},
              {"seed", in.seed}};
}

/// One line per modified set: index, kind, lead and second vertex, orbit
/// representative, direction code, transport images.
inline std::string format_sets(const steiner::DesignOracle& o) {
  std::ostringstream os;
  os << "# index kind a b orbit direction transport\n";
  for (std::size_t i = 0; i < o.sets().size(); ++i) {
    const auto& m = o.sets()[i];
    os << i << ' ' << (m.kind == 1 ? "I" : "II") << ' ' << m.a << ' ' << m.b << ' ' << m.orbit << ' ' << m.direction
       << ' ' << m.transport.to_string() << '\n';
  }
  return os.str();
}

inline void write_construction(const fs::path& dir, const steiner::DesignOracle& o) {
  fs::create_directories(dir);
  const auto& in = o.inputs();
  write_file(dir / "manifest.json", manifest_of(o).dump(2) + "\n");
  write_file(dir / "gamma.txt", frucht::format_graph(in.gamma.graph));
  write_file(dir / "group.txt", perm::format_group_text(in.gamma.g_action.generators()));
  write_file(dir / "delta1.txt", design::format_design(in.deltas.delta1));
  write_file(dir / "delta2.txt", design::format_design(in.deltas.delta2));
  write_file(dir / "delta_certificate.json", delta_certificate(in.deltas).dump(2) + "\n");
  write_file(dir / "sets.txt", format_sets(o));
}

/// Rebuilds the assemble inputs from a construction directory, recomputing
/// the Δ hashes and Aut Γ and checking them against the manifest.
inline steiner::AssembleInputs load_construction(const fs::path& dir) {
  json m;
  try {
    m = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
  }
  try {
    steiner::AssembleInputs in;
    in.flavor = parse_flavor(m.at("flavor").get<std::string>());
    in.q = m.at("q").get<std::uint32_t>();
    in.seed = m.at("seed").get<std::uint64_t>();
    const auto graph = frucht::parse_graph(read_file(dir / m.at("gamma").at("file").get<std::string>()));
    auto gens = perm::parse_group_text(read_file(dir / m.at("group").at("file").get<std::string>()));
    if (gens.empty()) gens.push_back(perm::Perm::identity(graph.n));
    in.gamma = frucht::verify_gamma(graph, perm::PermGroup(graph.n, gens));
    in.gamma.method = m.at("gamma").value("method", std::string("loaded"));
    const auto files = m.at("delta").at("files");
    in.deltas.flavor = in.flavor;
    in.deltas.q = in.q;
    in.deltas.delta1 = design::parse_design(read_file(dir / files.at(0).get<std::string>()));
    in.deltas.delta2 = design::parse_design(read_file(dir / files.at(1).get<std::string>()));
    in.deltas.hash1 = canon::canonical_form(in.deltas.delta1.incidence()).hash_hex();
    in.deltas.hash2 = canon::canonical_form(in.deltas.delta2.incidence()).hash_hex();
    if (in.deltas.hash1 != m.at("delta").at("hash_delta1").get<std::string>() ||
        in.deltas.hash2 != m.at("delta").at("hash_delta2").get<std::string>())
      throw Error(Errc::OracleInconsistent, "Δ files do not match the manifest hashes");
    const auto cert_file = dir / m.at("delta").value("certificate", std::string("delta_certificate.json"));
    if (fs::exists(cert_file)) {
      const auto cert = json::parse(read_file(cert_file));
      in.deltas.aut1_order = cert.value("aut_order_delta1", std::uint64_t{0});
      in.deltas.aut2_order = cert.value("aut_order_delta2", std::uint64_t{0});
      in.deltas.hash_classical = cert.value("hash_classical", std::string());
    }
    const auto& w = m.at("witnesses");
    in.witnesses = std::array<steiner::SharpWitness, 2>{witness_from(w.at(0)), witness_from(w.at(1))};
    return in;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
  }
}

/// Every block of a small construction, found by querying all t-subsets
/// that are not yet covered.
inline design::Design materialize(const steiner::DesignOracle& o, std::uint64_t max_points) {
  const auto v = o.num_points();
  if (v > max_points)
    throw Error(Errc::SizeLimit, std::to_string(v) + " points exceed the materialization cap of " +
                                     std::to_string(max_points));
  // Point ids are sparse codes; number them in increasing order.
  std::vector<steiner::Id> ids;
  ids.reserve(v);
  const auto& sp = o.space();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < o.n(); ++i) total *= sp.f().size();
  for (std::uint64_t c = 0; c < total; ++c) {
    if (o.flavor() == twist::Flavor::Proj && (c == 0 || o.id(sp.decode(c)) != c)) continue;
    ids.push_back(c);
  }
  auto local = [&](steiner::Id p) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), p) - ids.begin());
  };
  std::set<design::Block> blocks;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (o.t() == 2) {
        design::Block blk;
        for (auto p : o.block(ids[a], ids[b])) blk.push_back(local(p));
        if (blk[0] == a) blocks.insert(blk);  // each block once, from its least pair
        continue;
      }
      for (std::size_t c = b + 1; c < ids.size(); ++c) {
        design::Block blk;
        for (auto p : o.block(ids[a], ids[b], ids[c])) blk.push_back(local(p));
        if (blk[0] == a) blocks.insert(blk);
      }
    }
  return design::Design{static_cast<std::uint32_t>(ids.size()), {blocks.begin(), blocks.end()}};
}

}  // namespace autd::io
