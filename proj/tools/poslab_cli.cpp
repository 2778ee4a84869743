// poslab: sums-of-squares certificates, Lasserre bounds and the degree and
// gap bounds around them, from the command line.
//
// Exit codes: 0 success, 1 input error, 2 inconclusive, 3 verification
// failure, 4 solver failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poslab/bounds.hpp"
#include "poslab/errors.hpp"
#include "poslab/io.hpp"
#include "poslab/sos.hpp"

using namespace poslab;

namespace {

enum Exit { kOk = 0, kInputError = 1, kInconclusive = 2, kVerifyFail = 3, kSolverFail = 4 };

struct Config {
  std::string input;
  std::string output;
  std::string certificate;
  std::string format;
  std::string mode = "quadratic_module";
  int level = -1;
  std::string levels;
  double c = 1.0, c0 = 1.0, c1 = 1.0, c2 = 1.0;
  double tol = kDefaultResidualTol;
  int grid = 0;
  std::uint64_t seed = 42;
  int samples = 1000;
  int k_max = 10;
  int d_max = 50;
  double lambda = -1.0;
  double radius_squared = 1.0;
  // bounds without a problem file
  int d = 0, n = 0;
  double norm_f = 0.0, f_star = 0.0;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + cfg.output + "'");
  out << text;
}

ProblemFile load_problem(const Config& cfg) {
  if (cfg.input.empty()) throw ArgumentError("--input is required");
  return problem_from_json(read_json_file(cfg.input));
}

SosOptions sos_options(const Config& cfg) {
  SosOptions o;
  o.residual_tol = cfg.tol;
  if (const char* cap = std::getenv("POSLAB_MAX_SDP_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || v < 1) throw ArgumentError("POSLAB_MAX_SDP_DIM must be a positive integer");
    o.sdp.max_total_dimension = static_cast<int>(v);
  }
  return o;
}

GridSpec grid_spec(const Config& cfg, int n, const std::optional<Box>& box) {
  GridSpec g = GridSpec::defaults(n);
  if (box) g.box = *box;
  if (cfg.grid > 0) g.points_per_axis = cfg.grid;
  return g;
}

GridSpec unit_grid_spec(const Config& cfg, int n) { return grid_spec(cfg, n, std::nullopt); }

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw ArgumentError("bad level '" + s + "'");
    }
    if (pos != s.size() || v < 0) throw ArgumentError("bad level '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ArgumentError("level range must be lo:hi or lo:hi:step");
    const int lo = to_int(parts[0]), hi = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 2;
    if (step < 1) throw ArgumentError("level step must be >= 1");
    for (int k = lo; k <= hi; k += step) out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_int(p));
  return out;
}

Json echo(const ProblemFile& p) {
  Json j;
  j["n"] = p.system.dimension();
  j["objective"] = to_string(p.objective);
  Json cs = Json::array();
  for (const Polynomial& g : p.system.constraints()) cs.push_back(to_string(g));
  j["constraints"] = cs;
  return j;
}

int cmd_solve(const Config& cfg) {
  if (cfg.level < 0) throw ArgumentError("--level is required");
  const ProblemFile p = load_problem(cfg);
  const LasserreResult r = lasserre_bound(p.objective, p.system, cfg.level, sos_options(cfg));
  Json j;
  j["command"] = "solve";
  j["problem"] = echo(p);
  j["result"] = to_json(r);
  emit(cfg, dump_json(j));
  if (r.kind == BoundKind::finite || r.kind == BoundKind::plus_infinity) return kOk;
  return kInconclusive;
}

int cmd_certify(const Config& cfg) {
  if (cfg.level < 0) throw ArgumentError("--level is required");
  const ProblemFile p = load_problem(cfg);
  const MembershipProblem mp{p.objective, p.system, cfg.level, parse_certificate_mode(cfg.mode)};
  const MembershipResult r = membership(mp, sos_options(cfg));
  Json j;
  j["command"] = "certify";
  j["problem"] = echo(p);
  j["mode"] = cfg.mode;
  j["result"] = to_json(r);
  emit(cfg, dump_json(j));
  if (r.found && !cfg.certificate.empty()) {
    std::ofstream out(cfg.certificate, std::ios::binary);
    if (!out) throw ArgumentError("cannot write '" + cfg.certificate + "'");
    out << dump_json(certificate_to_json(*r.certificate));
  }
  return r.found ? kOk : kInconclusive;
}

int cmd_verify(const Config& cfg) {
  if (cfg.certificate.empty()) throw ArgumentError("--certificate is required");
  const ProblemFile p = load_problem(cfg);
  const Certificate c = certificate_from_json(read_json_file(cfg.certificate));
  if (c.system.dimension() != p.system.dimension()) throw ArgumentError("certificate and problem dimension differ");
  if (c.system.constraints() != p.system.constraints()) {
    throw ArgumentError("certificate generators differ from the problem constraints");
  }
  const VerificationReport r = verify(c, p.objective, cfg.tol);
  Json j;
  j["command"] = "verify";
  j["problem"] = echo(p);
  j["report"] = to_json(r);
  emit(cfg, dump_json(j));
  return r.pass ? kOk : kVerifyFail;
}

int cmd_bounds(const Config& cfg) {
  BoundInputs b;
  b.c = cfg.c;
  Json j;
  j["command"] = "bounds";
  if (!cfg.input.empty()) {
    const ProblemFile p = load_problem(cfg);
    b.d = p.objective.degree();
    b.n = p.system.dimension();
    b.norm_f = weighted_norm(p.objective);
    b.f_star = grid_min(p.objective, p.system, grid_spec(cfg, b.n, p.box)).minimum_value;
    j["problem"] = echo(p);
  }
  if (cfg.d > 0) b.d = cfg.d;
  if (cfg.n > 0) b.n = cfg.n;
  if (cfg.norm_f > 0) b.norm_f = cfg.norm_f;
  if (cfg.f_star != 0) b.f_star = cfg.f_star;
  if (cfg.level >= 0) b.k = cfg.level;
  j["inputs"] = to_json(b);
  Json out;
  out["schmuedgen"] = number(schmuedgen_degree_bound(b));
  const BoundValue put = putinar_degree_bound(b);
  out["putinar"] = number(put.value);
  out["putinar_saturated"] = put.saturated;
  if (cfg.level >= 0) {
    const BoundValue gap = gap_bound(b);
    out["gap"] = to_json(gap);
    out["gap"]["threshold"] = number(gap.threshold);
  }
  j["bounds"] = out;
  emit(cfg, dump_json(j));
  return kOk;
}

int cmd_lift(const Config& cfg) {
  const ProblemFile p = load_problem(cfg);
  const int n = p.system.dimension();
  const GridSpec g = unit_grid_spec(cfg, n);
  const LiftingParameters lp = lifting_parameters(p.objective, p.system, cfg.c0, cfg.c1, cfg.c2, g);
  const double lambda = cfg.lambda >= 0 ? cfg.lambda : lp.lambda;
  const LiftingSearch s = find_lifting_k(p.objective, p.system, lambda, g, cfg.k_max);
  Json j;
  j["command"] = "lift";
  j["problem"] = echo(p);
  j["parameters"] = to_json(lp);
  Json search = to_json(s);
  search["lambda"] = number(lambda);
  search["k_max"] = cfg.k_max;
  j["search"] = search;
  emit(cfg, dump_json(j));
  return s.found ? kOk : kInconclusive;
}

int cmd_converge(const Config& cfg) {
  const std::vector<int> levels = parse_levels(cfg.levels);
  if (levels.empty()) throw ArgumentError("--levels must name at least one level");
  const ProblemFile p = load_problem(cfg);
  const SosOptions opts = sos_options(cfg);
  const double grid_f = grid_min(p.objective, p.system, grid_spec(cfg, p.system.dimension(), p.box)).minimum_value;
  BoundInputs b;
  b.c = cfg.c;
  b.d = std::max(1, p.objective.degree());
  b.n = p.system.dimension();
  b.norm_f = weighted_norm(p.objective);

  const bool csv = cfg.format != "json";
  std::string text = csv ? "k,f_k_star,grid_f_star,gap,gap_bound\n" : "";
  Json rows = Json::array();
  int failures = 0;
  for (int k : levels) {
    std::string fk = "NA", gap = "NA", bound = "NA";
    Json jfk = nullptr, jgap = nullptr, jbound = nullptr;
    Json row;
    row["k"] = k;
    try {
      const LasserreResult r = lasserre_bound(p.objective, p.system, k, opts);
      row["kind"] = std::string(to_string(r.kind));
      if (r.kind == BoundKind::finite) {
        fk = fmt(r.lower_bound);
        gap = fmt(grid_f - r.lower_bound);
        jfk = number(r.lower_bound);
        jgap = number(grid_f - r.lower_bound);
      } else if (r.kind == BoundKind::minus_infinity) {
        fk = "-inf";
        gap = "inf";
        jfk = number(-HUGE_VAL);
        jgap = number(HUGE_VAL);
      } else if (r.kind == BoundKind::plus_infinity) {
        fk = "inf";
        jfk = number(HUGE_VAL);
      }
      if (!r.reason.empty()) row["reason"] = r.reason;
    } catch (const SolverError& e) {
      ++failures;
      fk = gap = "ERROR";
      row["kind"] = "error";
      row["reason"] = e.what();
    } catch (const CapacityError& e) {
      ++failures;
      fk = gap = "ERROR";
      row["kind"] = "error";
      row["reason"] = e.what();
    }
    if (b.norm_f > 0) {
      b.k = k;
      const BoundValue gb = gap_bound(b);
      if (gb.applicable) {
        bound = fmt(gb.value);
        jbound = number(gb.value);
      }
    }
    text += std::to_string(k) + "," + fk + "," + fmt(grid_f) + "," + gap + "," + bound + "\n";
    row["f_k_star"] = jfk;
    row["grid_f_star"] = number(grid_f);
    row["gap"] = jgap;
    row["gap_bound"] = jbound;
    rows.push_back(row);
  }
  if (csv) {
    emit(cfg, text);
  } else {
    Json j;
    j["command"] = "converge";
    j["problem"] = echo(p);
    j["c"] = number(cfg.c);
    j["rows"] = rows;
    emit(cfg, dump_json(j));
  }
  return failures == static_cast<int>(levels.size()) ? kSolverFail : kOk;
}

int cmd_estimate(const Config& cfg) {
  const ProblemFile p = load_problem(cfg);
  const LojasiewiczFit f =
      lojasiewicz_estimate(p.system, grid_spec(cfg, p.system.dimension(), p.box), cfg.samples, cfg.seed);
  Json j;
  j["command"] = "estimate";
  j["problem"] = echo(p);
  j["fit"] = to_json(f);
  emit(cfg, dump_json(j));
  return kOk;
}

int cmd_round(const Config& cfg) {
  const ProblemFile p = load_problem(cfg);
  const RoundResult r = round_hypercube_degree(p.system, grid_spec(cfg, p.system.dimension(), p.box), cfg.d_max);
  Json j;
  j["command"] = "round";
  j["problem"] = echo(p);
  j["result"] = to_json(r);
  emit(cfg, dump_json(j));
  return r.found ? kOk : kInconclusive;
}

int cmd_archimedean(const Config& cfg) {
  std::vector<int> levels = parse_levels(cfg.levels);
  if (cfg.level >= 0) levels = {cfg.level};
  if (levels.empty()) throw ArgumentError("--level or --levels is required");
  const ProblemFile p = load_problem(cfg);
  const SosOptions opts = sos_options(cfg);
  Json j;
  j["command"] = "archimedean";
  j["problem"] = echo(p);
  j["N"] = number(cfg.radius_squared);
  Json attempts = Json::array();
  bool found = false;
  for (int k : levels) {
    const MembershipResult r = archimedean_witness(p.system, cfg.radius_squared, k, opts);
    attempts.push_back(to_json(r));
    if (r.found) {
      found = true;
      break;
    }
  }
  j["found"] = found;
  j["inconclusive"] = !found;
  j["attempts"] = attempts;
  emit(cfg, dump_json(j));
  return found ? kOk : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poslab: sums-of-squares certificates and Lasserre bounds"};
  app.require_subcommand(1);
  Config cfg;

  auto input = [&](CLI::App* s) { s->add_option("--input", cfg.input, "problem JSON file"); };
  auto output = [&](CLI::App* s) { s->add_option("--output", cfg.output, "write the result here instead of stdout"); };
  auto grid = [&](CLI::App* s) { s->add_option("--grid", cfg.grid, "grid points per axis")->check(CLI::Range(2, 100000)); };
  auto tol = [&](CLI::App* s) { s->add_option("--tol", cfg.tol, "residual tolerance for verification")->check(CLI::PositiveNumber); };

  CLI::App* solve = app.add_subcommand("solve", "Lasserre lower bound f_k* at one level");
  input(solve), output(solve), tol(solve);
  solve->add_option("--level", cfg.level, "relaxation level k")->check(CLI::NonNegativeNumber);

  CLI::App* certify = app.add_subcommand("certify", "search for a membership certificate of the objective");
  input(certify), output(certify), tol(certify);
  certify->add_option("--level", cfg.level, "truncation level k")->check(CLI::NonNegativeNumber);
  certify->add_option("--mode", cfg.mode, "quadratic_module or preordering")
      ->check(CLI::IsMember({"quadratic_module", "preordering"}));
  certify->add_option("--certificate", cfg.certificate, "also write the certificate JSON here");

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a certificate against the objective");
  input(verify_cmd), output(verify_cmd), tol(verify_cmd);
  verify_cmd->add_option("--certificate", cfg.certificate, "certificate JSON file");

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form degree and gap bounds");
  input(bounds), output(bounds), grid(bounds);
  bounds->add_option("--c", cfg.c, "the constant c")->check(CLI::PositiveNumber);
  bounds->add_option("--d", cfg.d, "degree of f")->check(CLI::PositiveNumber);
  bounds->add_option("--n", cfg.n, "number of variables")->check(CLI::PositiveNumber);
  bounds->add_option("--norm", cfg.norm_f, "weighted norm of f")->check(CLI::PositiveNumber);
  bounds->add_option("--fstar", cfg.f_star, "minimum of f on S");
  bounds->add_option("--level", cfg.level, "level k for the gap bound")->check(CLI::NonNegativeNumber);

  CLI::App* lift = app.add_subcommand("lift", "lifting parameters and empirical lifting degree");
  input(lift), output(lift), grid(lift);
  lift->add_option("--c0", cfg.c0)->check(CLI::PositiveNumber);
  lift->add_option("--c1", cfg.c1)->check(CLI::PositiveNumber);
  lift->add_option("--c2", cfg.c2)->check(CLI::PositiveNumber);
  lift->add_option("--lambda", cfg.lambda, "lambda for the search (default: from c1, c2)")->check(CLI::NonNegativeNumber);
  lift->add_option("--kmax", cfg.k_max, "largest k tried")->check(CLI::PositiveNumber);

  CLI::App* converge = app.add_subcommand("converge", "f_k* over a range of levels, as CSV");
  input(converge), output(converge), grid(converge), tol(converge);
  converge->add_option("--levels", cfg.levels, "e.g. 2,4,6 or 2:10 (step 2) or 2:10:1");
  converge->add_option("--c", cfg.c, "the constant c in the gap bound")->check(CLI::PositiveNumber);
  converge->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* estimate = app.add_subcommand("estimate", "fit Lojasiewicz exponent and scale");
  input(estimate), output(estimate), grid(estimate);
  estimate->add_option("--samples", cfg.samples, "number of samples outside S")->check(CLI::Range(2, 10000000));
  estimate->add_option("--seed", cfg.seed, "random seed");

  CLI::App* round = app.add_subcommand("round", "smallest d with S inside {1 - 1/d - sum x_i^(2d) > 0}");
  input(round), output(round), grid(round);
  round->add_option("--dmax", cfg.d_max, "largest d tried")->check(CLI::PositiveNumber);

  CLI::App* arch = app.add_subcommand("archimedean", "search for N - |x|^2 in the truncated module");
  input(arch), output(arch), tol(arch);
  arch->add_option("--N", cfg.radius_squared, "N")->check(CLI::PositiveNumber);
  arch->add_option("--level", cfg.level, "single even level")->check(CLI::NonNegativeNumber);
  arch->add_option("--levels", cfg.levels, "even levels, tried in order until found");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (lift->parsed()) return cmd_lift(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (round->parsed()) return cmd_round(cfg);
    if (arch->parsed()) return cmd_archimedean(cfg);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleAtResolution& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const DegenerateFitError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const RoundingError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerifyFail;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFail;
  } catch (const CapacityError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFail;
  }
  return kInputError;
}
