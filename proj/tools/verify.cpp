// verify: runs one verification driver and writes its certificate as JSON.
// Exit codes: 0 verified, 1 failed, 2 hypothesis violated, 3 precision or
// enumeration cap, 64 usage or input errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "padiclie/errors.hpp"
#include "padiclie/io.hpp"
#include "padiclie/theorems.hpp"

using namespace padiclie;

namespace {

constexpr int kUsage = 64;

struct Config {
  std::uint64_t p = 0;
  int e = 1, f = 1, n = 2, m = 0, s = 1, depth = 8;
  std::size_t d = 2;
  int prec = kDefaultPrecision;
  std::uint64_t cap = 1000000;
  std::string output, tower, lattice_file, model = "metabelian";
  bool normalize = false, timing = false, ok_level = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DriverOptions driver_options(Config& cfg) {
  DriverOptions opts;
  if (!cfg.tower.empty()) {
    auto t = parse_tower_file(cfg.tower);
    cfg.p = t.p;
    cfg.e = t.e;
    cfg.f = t.f;
    cfg.n = t.n;
    opts = t.options;
  }
  opts.prec = cfg.prec;
  opts.cap = cfg.cap;
  if (cfg.p == 0) throw UsageError("--p is required (or --tower)");
  if (!is_prime(cfg.p)) throw UsageError("--p must be prime");
  if (cfg.e < 1 || cfg.f < 1 || cfg.n < 1) throw UsageError("--e, --f and --n must be positive");
  if (!PadicContext::fits(cfg.p, cfg.prec)) throw UsageError("p^prec must stay below 2^62");
  return opts;
}

// Facts about a lattice file, mostly for checking input before a long run.
Certificate lattice_report(const Config& cfg) {
  auto file = parse_lattice_file(cfg.lattice_file, cfg.normalize);
  Certificate cert;
  cert.theorem = "lattice-file";
  cert.prec = file.lattice.ctx().prec();
  cert.params = {{"p", file.lattice.ctx().p()}, {"rank", file.lattice.rank()}, {"scale", file.lattice.scale()}};
  cert.checked = 1;
  cert.notes.push_back("basis valuation " + std::to_string(file.lattice.basis_valuation()));
  if (file.lie) {
    ++cert.checked;
    auto LL = commutator_sublattice(*file.lie, file.lattice);
    if (LL)
      cert.notes.push_back("[M, M] has full rank, s-invariants " +
                           relative_invariant_exponents(file.lattice, *LL).to_string());
    else
      cert.notes.push_back("[M, M] is not of full rank");
    auto kf = killing_form_check(*file.lie);
    cert.notes.push_back(kf.det_valuation ? "Killing determinant valuation " + std::to_string(*kf.det_valuation)
                                          : "Killing form degenerate at precision");
  }
  return cert;
}

Certificate dispatch(const std::string& command, Config& cfg) {
  if (command == "lattice") return lattice_report(cfg);
  if (command == "simplicity") {
    auto model = simplicity_model_from_string(cfg.model);
    if (!model) throw UsageError("--model must be shift, inclusion or metabelian");
    if (cfg.p == 0) throw UsageError("--p is required");
    if (!is_prime(cfg.p)) throw UsageError("--p must be prime");
    if (cfg.depth < 1 || cfg.depth >= cfg.prec) throw UsageError("--depth must lie in [1, prec)");
    DriverOptions opts;
    opts.prec = cfg.prec;
    opts.cap = cfg.cap;
    return simplicity_certificate(*model, cfg.p, cfg.d, cfg.s, cfg.depth, opts);
  }
  auto opts = driver_options(cfg);
  if (cfg.m < 0) throw UsageError("--m must be nonnegative");
  if (command == "theorem-a")
    return cfg.ok_level ? theorem_a_ok_level_check(cfg.p, cfg.e, cfg.f, cfg.n, cfg.m, opts)
                        : theorem_a_check(cfg.p, cfg.e, cfg.f, cfg.n, cfg.m, opts);
  if (command == "theorem-b") return non_self_similarity_certificate(cfg.p, cfg.e, cfg.f, cfg.n, cfg.m, opts);
  if (command == "n2-tables") return sinvariant_table_check(cfg.p, cfg.e, cfg.f, cfg.m, opts);
  if (command == "dvr-lemmas") return dvr_lemmas_certificate(cfg.p, cfg.e, cfg.f, opts);
  if (command == "finite-cyclic") return finite_cyclic_certificate(cfg.p, cfg.f, cfg.n, opts);
  if (command == "lll") return commutator_certificate(cfg.p, cfg.e, cfg.f, cfg.n, opts);
  throw UsageError("unknown subcommand " + command);
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Exhaustive verification of commutator and s-invariant statements for sl_1 of cyclic algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--prec", cfg.prec, "working precision p^prec")->check(CLI::Range(6, 64));
  app.add_option("--cap", cfg.cap, "largest enumeration to attempt")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "certificate path (default stdout)");
  app.add_flag("--normalize", cfg.normalize, "accept lattice files whose basis is not in Hermite form");
  app.add_flag("--timing", cfg.timing, "record elapsed_ms (makes output time dependent)");

  auto tower_flags = [&](CLI::App* sub, bool with_n, bool with_m) {
    sub->add_option("--p", cfg.p, "prime");
    sub->add_option("--e", cfg.e, "ramification index");
    sub->add_option("--f", cfg.f, "inertia degree");
    if (with_n) sub->add_option("--n", cfg.n, "degree of the unramified extension");
    if (with_m) sub->add_option("--m", cfg.m, "level: check p^m L");
    sub->add_option("--tower", cfg.tower, "tower description file (JSON)")->check(CLI::ExistingFile);
  };
  auto* ta = app.add_subcommand("theorem-a", "[N, N] = [L, L] for every maximal submodule");
  tower_flags(ta, true, true);
  ta->add_flag("--ok-level", cfg.ok_level, "enumerate maximal O_K-submodules instead");
  tower_flags(app.add_subcommand("theorem-b", "no simple virtual endomorphism of index p"), true, true);
  tower_flags(app.add_subcommand("n2-tables", "s-invariant tables for n = 2"), false, true);
  tower_flags(app.add_subcommand("dvr-lemmas", "relative exponents inside O_K"), false, false);
  tower_flags(app.add_subcommand("finite-cyclic", "residue field lemmas"), true, false);
  tower_flags(app.add_subcommand("lll", "[L, L] against pi L_0 + sum L_j"), true, false);
  auto* simp = app.add_subcommand("simplicity", "invariant-ideal semi-decision for model lattices");
  simp->add_option("--p", cfg.p, "prime");
  simp->add_option("--model", cfg.model, "shift, inclusion or metabelian");
  simp->add_option("--d", cfg.d, "rank of the metabelian model")->check(CLI::Range(2, 8));
  simp->add_option("--s", cfg.s, "the metabelian bracket is p^s")->check(CLI::NonNegativeNumber);
  simp->add_option("--depth", cfg.depth, "index bound p^depth");
  auto* lat = app.add_subcommand("lattice", "validate a lattice file and report its invariants");
  lat->add_option("--file", cfg.lattice_file, "lattice file (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Certificate cert;
  try {
    auto start = std::chrono::steady_clock::now();
    cert = dispatch(command, cfg);
    if (cfg.timing)
      cert.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                            .count();
  } catch (const UsageError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "verify: precision: " << e.what() << "\n";
    return 3;
  }

  std::string text = render_certificate(cert);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "verify: cannot write " << cfg.output << "\n";
      return kUsage;
    }
  }
  return exit_code(cert.status);
}
