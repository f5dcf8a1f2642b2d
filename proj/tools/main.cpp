// autdesign: build and check designs with a prescribed automorphism group.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "autdesign/io.hpp"

using namespace autd;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kVerifyFailed = 2;
constexpr int kInputError = 3;
constexpr int kResourceCap = 4;

int exit_code(Errc e) {
  switch (e) {
    case Errc::SizeLimit:
    case Errc::GroupTooLarge:
    case Errc::SearchBudgetExceeded: return kResourceCap;
    case Errc::RecoveryFailed:
    case Errc::SearchExhausted:
    case Errc::CollisionDetected:
    case Errc::SharpUnsatisfied:
    case Errc::NoMajority:
    case Errc::ClassificationMismatch:
    case Errc::OracleInconsistent:
    case Errc::AutMismatch:
    case Errc::ConstructionFailed: return kVerifyFailed;
    default: return kInputError;
  }
}

const char* kExitCodes =
    "exit codes: 0 pass, 2 verification failure, 3 input error, 4 resource cap\n"
    "caps: AUTDESIGN_MAX_GROUP_ORDER, AUTDESIGN_SQS_MAX_MOVES, AUTDESIGN_MAX_MATERIALIZE";

// "(0 1 2)(3 4)" -> cycles
std::vector<std::vector<std::uint32_t>> parse_cycles(const std::string& text) {
  std::vector<std::vector<std::uint32_t>> out;
  std::string body = text;
  for (auto& c : body)
    if (c == ',') c = ' ';
  std::size_t i = 0;
  while ((i = body.find('(', i)) != std::string::npos) {
    const auto j = body.find(')', i);
    if (j == std::string::npos) throw Error(Errc::ParseError, "unclosed cycle in " + text);
    std::istringstream is(body.substr(i + 1, j - i - 1));
    std::vector<std::uint32_t> c;
    std::uint32_t x;
    while (is >> x) c.push_back(x);
    if (!is.eof()) throw Error(Errc::ParseError, "bad cycle entry in " + text);
    if (c.size() > 1) out.push_back(c);
    i = j + 1;
  }
  return out;
}

perm::PermGroup read_group(const std::string& file) {
  auto gens = perm::parse_group_text(io::read_file(file));
  if (gens.empty()) throw Error(Errc::ParseError, "group file has no permutations");
  return perm::PermGroup(gens[0].degree(), gens);
}

void emit(const std::string& text, const std::optional<fs::path>& out) {
  if (out)
    io::write_file(*out, text);
  else
    std::cout << text;
}

struct ConstructArgs {
  std::string flavor = "proj";
  std::uint32_t q = 2;
  std::string group;
  std::uint64_t seed = 1;
  std::string out;
  bool materialize = false;
};

steiner::DesignOracle construct(const ConstructArgs& a) {
  const auto f = io::parse_flavor(a.flavor);
  if (f == twist::Flavor::Aff && a.q <= 2) throw CLI::ValidationError("--q", "the affine construction needs q > 2");
  if (f == twist::Flavor::Sqs && a.q != 2) throw CLI::ValidationError("--q", "the SQS construction needs q = 2");
  frucht::BuildOptions bo;
  bo.seed = a.seed;
  bo.max_group_order = io::env_cap("AUTDESIGN_MAX_GROUP_ORDER", bo.max_group_order);
  steiner::AssembleInputs in;
  in.flavor = f;
  in.q = a.q;
  in.seed = a.seed;
  in.gamma = frucht::build_gamma(read_group(a.group), bo);
  in.deltas = io::find_deltas(f, a.q, a.seed);
  return steiner::assemble(std::move(in));
}

void write_construct(const steiner::DesignOracle& o, const ConstructArgs& a) {
  io::write_construction(a.out, o);
  if (a.materialize)
    io::write_file(fs::path(a.out) / "design.txt",
                   design::format_design(io::materialize(o, io::env_cap("AUTDESIGN_MAX_MATERIALIZE", 1u << 16))));
}

steiner::VerifyOptions verify_options(std::size_t samples, std::uint64_t seed, unsigned jobs) {
  steiner::VerifyOptions v;
  v.seed = seed;
  v.coverage_samples = samples;
  v.plane_samples = std::max<std::size_t>(1, samples / 10);
  v.recover_samples = std::max<std::size_t>(1, samples / 100);
  v.moved_samples = std::max<std::size_t>(1, samples / 10);
  v.jobs = jobs;
  return v;
}

int report(const steiner::VerificationReport& r, const fs::path& dir) {
  const auto text = r.to_json().dump(2) + "\n";
  io::write_file(dir / "report.json", text);
  std::cout << text;
  return r.passed() ? kPass : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Designs with a prescribed automorphism group"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  int rc = kPass;

  // field
  auto* field = app.add_subcommand("field", "Modulus and θ-power table of GF(p^m)");
  std::uint32_t fp = 2;
  int fm = 1;
  std::vector<int> fmod;
  field->add_option("--p", fp, "characteristic")->required();
  field->add_option("--m", fm, "degree")->required();
  field->add_option("--modulus", fmod, "coefficients c0,c1,...,cm")->delimiter(',');
  field->callback([&] {
    auto f = gf::make_field(fp, fm, fmod.empty() ? std::nullopt : std::optional<std::vector<int>>(fmod));
    std::cout << "GF(" << fp << "^" << fm << ") size " << f->size() << "\nmodulus";
    for (int c : f->modulus()) std::cout << ' ' << c;
    std::cout << "\n";
    for (std::uint32_t i = 0; i < f->theta_order(); ++i) {
      std::cout << "theta^" << i << " =";
      for (int c : f->coeffs(f->theta_pow(i))) std::cout << ' ' << c;
      std::cout << "\n";
    }
  });

  // gamma
  auto* gamma = app.add_subcommand("gamma", "Graph whose automorphism group is the given group");
  std::string ggroup;
  std::uint64_t gseed = 1;
  std::optional<std::string> gout;
  gamma->add_option("--group", ggroup, "group file, one 'deg k: images' line per generator")->required();
  gamma->add_option("--seed", gseed);
  gamma->add_option("--out", gout, "graph file (default stdout)");
  gamma->callback([&] {
    frucht::BuildOptions bo;
    bo.seed = gseed;
    bo.max_group_order = io::env_cap("AUTDESIGN_MAX_GROUP_ORDER", bo.max_group_order);
    auto g = frucht::build_gamma(read_group(ggroup), bo);
    std::cerr << "method " << g.method << ", |Aut| = " << g.cert.group_order << ", semiregular\n";
    emit(frucht::format_graph(g.graph), gout ? std::optional<fs::path>(*gout) : std::nullopt);
  });

  // delta
  auto* delta = app.add_subcommand("delta", "The two auxiliary designs Δ₁, Δ₂ and their certificate");
  std::string dflavor = "proj";
  std::uint32_t dq = 2;
  std::uint64_t dseed = 1;
  std::optional<std::string> dout;
  delta->add_option("--flavor", dflavor)->check(CLI::IsMember({"proj", "aff", "sqs"}))->required();
  delta->add_option("--q", dq)->required();
  delta->add_option("--seed", dseed, "SQS search seed");
  delta->add_option("--out", dout, "directory for delta1.txt, delta2.txt, delta_certificate.json");
  delta->callback([&] {
    const auto f = io::parse_flavor(dflavor);
    if (f == twist::Flavor::Aff && dq <= 2) throw CLI::ValidationError("--q", "the affine construction needs q > 2");
    const auto d = io::find_deltas(f, dq, dseed);
    const auto cert = io::delta_certificate(d).dump(2) + "\n";
    if (dout) {
      fs::create_directories(*dout);
      io::write_file(fs::path(*dout) / "delta1.txt", design::format_design(d.delta1));
      io::write_file(fs::path(*dout) / "delta2.txt", design::format_design(d.delta2));
      io::write_file(fs::path(*dout) / "delta_certificate.json", cert);
    }
    std::cout << design::format_design(d.delta1) << design::format_design(d.delta2) << cert;
  });

  // twist
  auto* tw = app.add_subcommand("twist", "Twisted design D_π in the design file format");
  std::string tamb = "proj";
  int td = 3;
  std::uint32_t tq = 2;
  std::string tcycles;
  std::optional<std::string> tout;
  tw->add_option("--ambient", tamb)->check(CLI::IsMember({"proj", "aff"}))->required();
  tw->add_option("--d", td, "dimension")->default_val(3);
  tw->add_option("--q", tq)->required();
  tw->add_option("--cycles", tcycles, "π on local X indices, e.g. \"(0 1)(2 3)\"")->required();
  tw->add_option("--out", tout);
  tw->callback([&] {
    twist::TwistSpace sp(tamb == "proj" ? twist::Ambient::Projective : twist::Ambient::Affine, td, tq);
    const auto pi = perm::Perm::from_cycles(sp.x_size(), parse_cycles(tcycles));
    emit(design::format_design(twist::build_twist(sp, pi).design), tout ? std::optional<fs::path>(*tout) : std::nullopt);
  });

  // aut
  auto* aut = app.add_subcommand("aut", "Automorphism group of a design file");
  std::string adesign;
  aut->add_option("--design", adesign)->required()->check(CLI::ExistingFile);
  aut->callback([&] {
    const auto d = design::parse_design(io::read_file(adesign));
    const auto g = canon::aut_group(d.incidence());
    std::cout << "order " << g.order() << "\n" << perm::format_group_text(g.generators());
  });

  // iso
  auto* iso = app.add_subcommand("iso", "Isomorphism between two design files");
  std::string ia, ib;
  iso->add_option("--a", ia)->required()->check(CLI::ExistingFile);
  iso->add_option("--b", ib)->required()->check(CLI::ExistingFile);
  iso->callback([&] {
    const auto a = design::parse_design(io::read_file(ia));
    const auto b = design::parse_design(io::read_file(ib));
    if (auto p = canon::find_iso(a.incidence(), b.incidence()))
      std::cout << "isomorphic\n" << p->to_string() << "\n";
    else
      std::cout << "NOT isomorphic\n";
  });

  // coset-bound
  auto* cb = app.add_subcommand("coset-bound", "v_d!/(v_{d+1}·|PΓL(d,q)|²) as an exact rational");
  int cbd = 3;
  std::uint32_t cbq = 2;
  cb->add_option("--d", cbd)->required();
  cb->add_option("--q", cbq)->required();
  cb->callback([&] { std::cout << twist::coset_bound(cbd, cbq).text() << "\n"; });

  // construct
  ConstructArgs ca;
  auto* con = app.add_subcommand("construct", "Assemble the design oracle and persist its manifest");
  con->add_option("--flavor", ca.flavor)->check(CLI::IsMember({"proj", "aff", "sqs"}))->required();
  con->add_option("--q", ca.q)->required();
  con->add_option("--group", ca.group)->required()->check(CLI::ExistingFile);
  con->add_option("--seed", ca.seed);
  con->add_option("--out", ca.out)->required();
  con->add_flag("--materialize", ca.materialize, "also write every block (small instances only)");
  con->callback([&] {
    auto o = construct(ca);
    write_construct(o, ca);
    std::cout << io::manifest_of(o).dump(2) << "\n";
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Sampled verification of a persisted construction");
  std::string vin;
  std::size_t vsamples = 10000;
  std::uint64_t vseed = 1;
  unsigned vjobs = 1;
  ver->add_option("--in", vin)->required()->check(CLI::ExistingDirectory);
  ver->add_option("--samples", vsamples, "coverage samples; plane-set, recovery and moved-point counts scale from it");
  ver->add_option("--seed", vseed);
  ver->add_option("--jobs", vjobs)->check(CLI::PositiveNumber);
  ver->callback([&] {
    auto o = steiner::assemble(io::load_construction(vin));
    rc = report(steiner::verify_design(o, verify_options(vsamples, vseed, vjobs)), vin);
  });

  // recover
  auto* rec = app.add_subcommand("recover", "Recover lines (planes for SQS) of a persisted construction");
  std::string rin;
  std::size_t rsamples = 10;
  std::uint64_t rseed = 1;
  rec->add_option("--in", rin)->required()->check(CLI::ExistingDirectory);
  rec->add_option("--samples", rsamples, "number of sampled point pairs (triples)");
  rec->add_option("--seed", rseed);
  rec->callback([&] {
    auto o = steiner::assemble(io::load_construction(rin));
    json out = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < rsamples; ++i) {
      steiner::SampleRng rng(rseed, 7, i);
      std::vector<steiner::Id> pts;
      const auto set = static_cast<std::uint32_t>(rng.below(o.sets().size()));
      while (static_cast<int>(pts.size()) < o.t()) {
        const auto p = i % 2 ? o.random_point_in(set, rng) : o.random_point(rng);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      const auto got = o.t() == 2 ? steiner::recover_line(o, pts[0], pts[1], rng)
                                  : steiner::recover_plane(o, pts[0], pts[1], pts[2], rng);
      const auto want = o.geometric_block(pts);
      ok = ok && got == want;
      out.push_back({{"query", pts}, {"recovered", got}, {"geometric", want}, {"agree", got == want}});
    }
    std::cout << out.dump(2) << "\n";
    rc = ok ? kPass : kVerifyFailed;
  });

  // pipeline
  ConstructArgs pa;
  std::size_t psamples = 10000;
  unsigned pjobs = 1;
  auto* pipe = app.add_subcommand("pipeline", "gamma, delta, construct and verify in one run");
  pipe->add_option("--group", pa.group)->required()->check(CLI::ExistingFile);
  pipe->add_option("--flavor", pa.flavor)->check(CLI::IsMember({"proj", "aff", "sqs"}))->required();
  pipe->add_option("--q", pa.q)->required();
  pipe->add_option("--seed", pa.seed);
  pipe->add_option("--out", pa.out)->required();
  pipe->add_option("--samples", psamples);
  pipe->add_option("--jobs", pjobs)->check(CLI::PositiveNumber);
  pipe->add_flag("--materialize", pa.materialize);
  pipe->callback([&] {
    auto o = construct(pa);
    write_construct(o, pa);
    rc = report(steiner::verify_design(o, verify_options(psamples, pa.seed, pjobs)), pa.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return rc;
}
