// qtopo: command-line front end for the Gauss-sum invariants and the
// phase-estimation simulator.
//
// Exit codes: 0 ok, 2 bad configuration, 3 bad input data, 4 brute-force
// guard exceeded, 5 property check failed.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtopo/errors.hpp"
#include "qtopo/invariants.hpp"
#include "qtopo/io.hpp"
#include "qtopo/linkgeom.hpp"
#include "qtopo/numtheory.hpp"
#include "qtopo/qsim.hpp"

namespace {

using nlohmann::json;
using namespace qtopo;

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInputError = 3,
  kGuardError = 4,
  kPropertyFailure = 5,
};

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what) {}
};

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::int64_t k = 0;
  std::int64_t a = 1;
  std::string method = "brute";
  std::string range = "paper";
  std::string invariant = "su2k3";
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  std::size_t moves = 10;
  SumOptions sum;
};

void require_input(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw ConfigError("--input", "an input file is required");
  std::ifstream probe(cfg.input_path);
  if (!probe) throw ConfigError("--input", "cannot open '" + cfg.input_path + "'");
}

void require_k_given(const RunConfig& cfg) {
  if (cfg.k == 0) throw ConfigError("--k", "a modulus is required");
}

void require_prime_power(const RunConfig& cfg) {
  require_k_given(cfg);
  try {
    ModK ring(cfg.k);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--k", e.what());
  }
}

void require_odd_prime_qudit(const RunConfig& cfg) {
  require_k_given(cfg);
  if (cfg.k < 3 || cfg.k % 2 == 0 || !is_prime(cfg.k) || cfg.k > kMaxQuditDim) {
    throw ConfigError("--k", "must be an odd prime <= " + std::to_string(kMaxQuditDim));
  }
}

void require_coprime_a(const RunConfig& cfg) {
  if (reduce_mod(cfg.a, cfg.k) == 0) throw ConfigError("--a", "must be coprime to k");
}

// Validates every field the command uses before any computation starts.
void validate(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "tau-abelian") {
    require_prime_power(cfg);
    if (cfg.method != "brute" && cfg.method != "factorized") {
      throw ConfigError("--method", "must be 'brute' or 'factorized'");
    }
  }
  if (c == "tau-dw" || (c == "check" && cfg.invariant == "dw")) {
    require_k_given(cfg);
    if (cfg.k < 3 || cfg.k % 2 == 0) throw ConfigError("--k", "must be odd and >= 3");
    if (c == "tau-dw" && cfg.range != "paper" && cfg.range != "full") {
      throw ConfigError("--range", "must be 'paper' or 'full'");
    }
  }
  if (c == "check") {
    if (cfg.invariant != "su2k3" && cfg.invariant != "abelian" && cfg.invariant != "dw") {
      throw ConfigError("--invariant", "must be 'su2k3', 'abelian' or 'dw'");
    }
    if (cfg.invariant == "abelian") require_prime_power(cfg);
  }
  if (c == "gauss-sum") {
    require_k_given(cfg);
    if (cfg.k < 2) throw ConfigError("--k", "must be >= 2");
  }
  if (c == "simulate") {
    require_odd_prime_qudit(cfg);
    require_coprime_a(cfg);
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ConfigError("--eps", "must lie in (0, 1)");
  }
  if (c == "tau-abelian" || c == "tau-su2k3" || c == "tau-dw" || c == "linking-matrix" ||
      c == "check") {
    require_input(cfg);
  }
}

json read_input(const std::string& path) {
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

FramedLinkMatrix read_link(const RunConfig& cfg) {
  const json doc = read_input(cfg.input_path);
  try {
    return io::load_link(doc);
  } catch (const GeometryError& e) {
    throw SchemaError("/components", e.what());
  }
}

DwRange dw_range(const RunConfig& cfg) {
  return cfg.range == "full" ? DwRange::kFull : DwRange::kPaper;
}

json property(const std::string& name, bool asserted, bool passed, double deviation,
              const std::string& note = {}) {
  json p{{"name", name}, {"asserted", asserted}, {"passed", passed}, {"max_deviation", deviation}};
  if (!note.empty()) p["note"] = note;
  return p;
}

// Largest component count whose brute-force enumeration stays within guard.
std::size_t guard_components(std::int64_t per_coordinate, std::int64_t guard) {
  std::size_t m = 0;
  for (std::int64_t total = per_coordinate; total <= guard; total *= per_coordinate) ++m;
  return m;
}

int cmd_check(const RunConfig& cfg, json& out) {
  const FramedLinkMatrix j = read_link(cfg);
  KirbyCheckConfig kc;
  kc.sum = cfg.sum;
  kc.dw_range = DwRange::kFull;
  std::size_t cap = j.size() + 3;
  if (cfg.invariant == "su2k3") {
    kc.invariant = InvariantKind::kSu2K3;
    cap = std::min(cap, guard_components(2, cfg.sum.guard));
  } else {
    kc.invariant = cfg.invariant == "abelian" ? InvariantKind::kAbelian : InvariantKind::kDijkgraafWitten;
    kc.k = cfg.k;
    cap = std::min(cap, guard_components(cfg.k, cfg.sum.guard));
  }
  cap = std::max(cap, j.size());

  json props = json::array();
  bool ok = true;
  auto record = [&](json p) {
    if (p["asserted"].get<bool>() && !p["passed"].get<bool>()) ok = false;
    props.push_back(std::move(p));
  };

  const auto script = random_move_script(j, cfg.moves, cfg.seed, cap);
  if (kc.invariant == InvariantKind::kDijkgraafWitten) {
    // Slides are asserted on the full range; blow-ups and the 1..k-1 range
    // are reported as data.
    const auto slides = random_slide_script(j, cfg.moves, cfg.seed);
    const KirbyReport rep = check_kirby_invariance(j, slides, kc);
    record(property("handle_slide_invariance", rep.asserted, rep.passed, rep.deviation, rep.note));
    const KirbyReport mixed = check_kirby_invariance(j, script, kc);
    record(property("kirby_invariance", mixed.asserted, mixed.passed, mixed.deviation, mixed.note));
    KirbyCheckConfig restricted = kc;
    restricted.dw_range = DwRange::kPaper;
    const KirbyReport pr = check_kirby_invariance(j, slides, restricted);
    record(property("restricted_range_slide_invariance", pr.asserted, pr.passed, pr.deviation, pr.note));
  } else {
    const KirbyReport rep = check_kirby_invariance(j, script, kc);
    record(property("kirby_invariance", rep.asserted, rep.passed, rep.deviation, rep.note));
  }

  if (kc.invariant == InvariantKind::kAbelian) {
    const ModK ring(cfg.k);
    const auto brute = tau_abelian(j, ring, Method::kBrute, cfg.sum);
    const auto fact = tau_abelian(j, ring, Method::kFactorized, cfg.sum);
    const double dev = std::abs(brute.value - fact.value) / std::abs(brute.value);
    record(property("factorized_vs_brute", true, dev < 1e-6, dev));
  } else if (kc.invariant == InvariantKind::kSu2K3) {
    const GaussValue gauss = multivariate_gauss_sum(j, 3, {1, 4}, SumRange::kOneToTwo, cfg.sum);
    const double dev = std::abs(gauss - su2_k3_sublink_sum(j));
    record(property("sublink_sum_equivalence", true, dev < 1e-9, dev));
  }

  out = json{{"command", "check"},
             {"invariant", cfg.invariant},
             {"seed", cfg.seed},
             {"moves", script.size()},
             {"m", j.size()},
             {"properties", props},
             {"passed", ok}};
  if (kc.invariant != InvariantKind::kSu2K3) out["k"] = cfg.k;
  return ok ? kOk : kPropertyFailure;
}

int run(const RunConfig& cfg, json& out) {
  const std::string& c = cfg.command;
  if (c == "tau-abelian") {
    const auto r = tau_abelian(read_link(cfg), ModK(cfg.k),
                               cfg.method == "factorized" ? Method::kFactorized : Method::kBrute,
                               cfg.sum);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    out = io::to_json(r);
  } else if (c == "tau-su2k3") {
    out = io::to_json(tau_su2_k3(read_link(cfg), cfg.sum));
  } else if (c == "tau-dw") {
    out = io::to_json(tau_dw(read_link(cfg), cfg.k, dw_range(cfg), cfg.sum));
    out["range"] = cfg.range;
  } else if (c == "gauss-sum") {
    const GaussValue g = gauss_sum_brute(cfg.k, cfg.a);
    out = json{{"k", cfg.k}, {"a", cfg.a}, {"re", g.real()}, {"im", g.imag()}, {"abs", std::abs(g)}};
  } else if (c == "linking-matrix") {
    out = io::to_json(read_link(cfg));
  } else if (c == "check") {
    return cmd_check(cfg, out);
  } else if (c == "simulate") {
    out = io::to_json(phase_estimate(cfg.k, cfg.a, cfg.epsilon, cfg.seed));
  }
  return kOk;
}

std::optional<std::int64_t> guard_from_env() {
  const char* raw = std::getenv("QTOPO_GUARD");
  if (raw == nullptr) return std::nullopt;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v <= 0) throw ConfigError("QTOPO_GUARD", "must be a positive integer");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum invariants of 3-manifolds from quadratic Gauss sums"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_io = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("-i,--input", cfg.input_path, "Link JSON (linking matrix or polygonal link)");
    sub->add_option("-o,--output", cfg.output_path, "Write JSON here instead of stdout");
  };

  auto* abel = app.add_subcommand("tau-abelian", "Abelian Chern-Simons invariant");
  abel->add_option("--k", cfg.k, "Odd prime power modulus");
  abel->add_option("--method", cfg.method, "brute | factorized");
  add_io(abel, true);

  auto* su2 = app.add_subcommand("tau-su2k3", "SU(2) invariant at level k = 3");
  add_io(su2, true);

  auto* dw = app.add_subcommand("tau-dw", "Z_k Dijkgraaf-Witten invariant");
  dw->add_option("--k", cfg.k, "Odd modulus");
  dw->add_option("--range", cfg.range, "paper (n_i in 1..k-1) | full (n_i in 0..k-1)");
  add_io(dw, true);

  auto* gs = app.add_subcommand("gauss-sum", "Quadratic Gauss sum G(k, a)");
  gs->add_option("--k", cfg.k, "Modulus >= 2");
  gs->add_option("--a", cfg.a, "Coefficient");
  add_io(gs, false);

  auto* lm = app.add_subcommand("linking-matrix", "Linking matrix of a polygonal link");
  add_io(lm, true);

  auto* chk = app.add_subcommand("check", "Kirby-move invariance and oracle checks");
  chk->add_option("--invariant", cfg.invariant, "su2k3 | abelian | dw");
  chk->add_option("--k", cfg.k, "Modulus (abelian, dw)");
  chk->add_option("--moves", cfg.moves, "Length of the random move script");
  chk->add_option("--seed", cfg.seed, "Seed for the move script");
  add_io(chk, true);

  auto* sim = app.add_subcommand("simulate", "Simulated Gauss-sum phase estimation");
  sim->add_option("--k", cfg.k, "Odd prime <= 1024");
  sim->add_option("--a", cfg.a, "Coefficient coprime to k");
  sim->add_option("--eps", cfg.epsilon, "Target phase error in (0, 1)");
  sim->add_option("--seed", cfg.seed, "Sampling seed");
  add_io(sim, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  json out;
  int code = kOk;
  try {
    if (auto g = guard_from_env()) cfg.sum.guard = *g;
    validate(cfg);
    code = run(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard: " << e.what() << " (set QTOPO_GUARD to override)\n";
    return kGuardError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = out.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output_path);
    if (!f) {
      std::cerr << "error: --output: cannot write '" << cfg.output_path << "'\n";
      return kConfigError;
    }
    f << text;
  }
  return code;
}
