#include "poslab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double as_double(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw ArgumentError(std::string(what) + " must be a number");
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ArgumentError(std::string(what) + " must be an integer");
  return j.get<int>();
}

Json vector_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("problem must be a JSON object");
  ProblemFile p;
  std::optional<int> n;
  if (j.contains("n")) {
    n = as_int(j.at("n"), "n");
    if (*n < 1) throw ArgumentError("n must be >= 1");
  }
  const Json& obj = require(j, "objective");
  if (!obj.is_string()) throw ArgumentError("objective must be a polynomial string");
  std::vector<std::string> texts;
  if (j.contains("constraints")) {
    const Json& cs = j.at("constraints");
    if (!cs.is_array()) throw ArgumentError("constraints must be an array of polynomial strings");
    for (const Json& c : cs) {
      if (!c.is_string()) throw ArgumentError("constraints must be an array of polynomial strings");
      texts.push_back(c.get<std::string>());
    }
  }
  if (!n) {
    // Infer n from the largest variable index anywhere in the problem.
    int m = parse_polynomial(obj.get<std::string>()).dimension();
    for (const std::string& t : texts) m = std::max(m, parse_polynomial(t).dimension());
    n = m;
  }
  p.objective = parse_polynomial(obj.get<std::string>(), *n);
  std::vector<Polynomial> gs;
  for (const std::string& t : texts) gs.push_back(parse_polynomial(t, *n));
  p.system = SemialgebraicSystem(*n, std::move(gs));
  if (j.contains("box")) {
    const Json& b = j.at("box");
    if (!b.is_array() || static_cast<int>(b.size()) != *n) throw ArgumentError("box must list one [lo, hi] per variable");
    Box box;
    for (const Json& iv : b) {
      if (!iv.is_array() || iv.size() != 2) throw ArgumentError("box entries must be [lo, hi]");
      box.push_back({as_double(iv[0], "box bound"), as_double(iv[1], "box bound")});
      if (!(box.back().lo < box.back().hi)) throw ArgumentError("box entries need lo < hi");
    }
    p.box = std::move(box);
  }
  if (j.contains("options")) {
    if (!j.at("options").is_object()) throw ArgumentError("options must be an object");
    p.options = j.at("options");
  }
  return p;
}

Json problem_to_json(const ProblemFile& p) {
  Json j;
  j["n"] = p.system.dimension();
  j["objective"] = to_string(p.objective);
  Json cs = Json::array();
  for (const Polynomial& g : p.system.constraints()) cs.push_back(to_string(g));
  j["constraints"] = cs;
  if (p.box) {
    Json b = Json::array();
    for (const Interval& iv : *p.box) b.push_back({iv.lo, iv.hi});
    j["box"] = b;
  }
  j["options"] = p.options;
  return j;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["mode"] = std::string(to_string(c.mode));
  j["n"] = c.system.dimension();
  j["level"] = c.level;
  Json gens = Json::array();
  for (const Polynomial& g : c.system.constraints()) gens.push_back(to_string(g));
  j["generators"] = gens;
  Json entries = Json::array();
  for (const CertificateEntry& e : c.entries) {
    Json ej;
    if (c.mode == CertificateMode::quadratic_module) {
      ej["index"] = e.index;
    } else {
      ej["delta"] = e.delta;
    }
    Json basis = Json::array();
    for (const Monomial& m : e.basis.monomials()) basis.push_back(std::vector<int>(m.exponents().begin(), m.exponents().end()));
    ej["basis"] = basis;
    Json gram = Json::array();
    for (Eigen::Index r = 0; r < e.gram.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index s = 0; s < e.gram.cols(); ++s) row.push_back(number(e.gram(r, s)));
      gram.push_back(row);
    }
    ej["gram"] = gram;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("certificate must be a JSON object");
  Certificate c;
  const Json& mode = require(j, "mode");
  if (!mode.is_string()) throw ArgumentError("mode must be a string");
  c.mode = parse_certificate_mode(mode.get<std::string>());
  const int n = as_int(require(j, "n"), "n");
  if (n < 1) throw ArgumentError("n must be >= 1");
  c.level = as_int(require(j, "level"), "level");
  std::vector<Polynomial> gens;
  const Json& gj = require(j, "generators");
  if (!gj.is_array()) throw ArgumentError("generators must be an array");
  for (const Json& g : gj) {
    if (!g.is_string()) throw ArgumentError("generators must be polynomial strings");
    gens.push_back(parse_polynomial(g.get<std::string>(), n));
  }
  c.system = SemialgebraicSystem(n, std::move(gens));
  const Json& ej = require(j, "entries");
  if (!ej.is_array()) throw ArgumentError("entries must be an array");
  for (const Json& e : ej) {
    CertificateEntry entry;
    if (c.mode == CertificateMode::quadratic_module) {
      entry.index = as_int(require(e, "index"), "index");
    } else {
      const Json& d = require(e, "delta");
      if (!d.is_array()) throw ArgumentError("delta must be an array");
      for (const Json& v : d) entry.delta.push_back(as_int(v, "delta entry"));
    }
    std::vector<Monomial> basis;
    const Json& bj = require(e, "basis");
    if (!bj.is_array()) throw ArgumentError("basis must be an array of exponent lists");
    for (const Json& m : bj) {
      if (!m.is_array() || static_cast<int>(m.size()) != n) throw ArgumentError("basis exponent lists must have length n");
      std::vector<int> exps;
      for (const Json& v : m) {
        exps.push_back(as_int(v, "exponent"));
        if (exps.back() < 0) throw ArgumentError("exponents must be >= 0");
      }
      basis.emplace_back(std::move(exps));
    }
    entry.basis = MonomialBasis(n, std::move(basis));
    const Json& qj = require(e, "gram");
    const auto s = static_cast<Eigen::Index>(entry.basis.size());
    if (!qj.is_array() || static_cast<Eigen::Index>(qj.size()) != s) throw ArgumentError("gram must be square with one row per basis monomial");
    entry.gram.resize(s, s);
    for (Eigen::Index r = 0; r < s; ++r) {
      const Json& row = qj[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != s) throw ArgumentError("gram must be square with one row per basis monomial");
      for (Eigen::Index col = 0; col < s; ++col) entry.gram(r, col) = as_double(row[static_cast<std::size_t>(col)], "gram entry");
    }
    c.entries.push_back(std::move(entry));
  }
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const VerificationReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["residual_norm"] = number(r.residual_norm);
  j["min_gram_eigenvalue"] = number(r.min_gram_eigenvalue);
  j["level"] = r.level;
  return j;
}

Json to_json(const SdpDiagnostics& d) {
  Json j;
  j["status"] = std::string(to_string(d.status));
  j["iterations"] = d.iterations;
  j["total_dimension"] = d.total_dimension;
  j["constraints"] = d.constraint_count;
  j["removed_constraints"] = d.removed_constraints;
  j["primal_residual"] = number(d.primal_residual);
  j["min_eigenvalue"] = number(d.min_eigenvalue);
  j["relative_gap"] = number(d.relative_gap);
  if (!d.message.empty()) j["message"] = d.message;
  return j;
}

Json to_json(const MembershipResult& r) {
  Json j;
  j["found"] = r.found;
  j["level"] = r.level;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.certificate) {
    j["verification"] = to_json(r.report);
    j["certificate"] = certificate_to_json(*r.certificate);
  }
  if (r.diagnostics) j["diagnostics"] = to_json(*r.diagnostics);
  return j;
}

Json to_json(const LasserreResult& r) {
  Json j;
  j["level"] = r.level;
  j["kind"] = std::string(to_string(r.kind));
  switch (r.kind) {
    case BoundKind::finite:
      j["lower_bound"] = number(r.lower_bound);
      break;
    case BoundKind::minus_infinity:
      j["lower_bound"] = "-inf";
      break;
    case BoundKind::plus_infinity:
      j["lower_bound"] = "inf";
      break;
    case BoundKind::inconclusive:
      j["lower_bound"] = nullptr;
      if (r.certificate && r.report.pass) j["certified_lower_bound"] = number(r.lower_bound);
      break;
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.certificate) {
    j["verification"] = to_json(r.report);
    j["certificate"] = certificate_to_json(*r.certificate);
  }
  if (r.diagnostics) j["diagnostics"] = to_json(*r.diagnostics);
  return j;
}

Json to_json(const BoundInputs& b) {
  Json j;
  j["c"] = number(b.c);
  j["d"] = b.d;
  j["n"] = b.n;
  j["norm_f"] = number(b.norm_f);
  j["f_star"] = number(b.f_star);
  j["k"] = b.k;
  return j;
}

Json to_json(const BoundValue& v) {
  Json j;
  j["value"] = v.applicable ? number(v.value) : Json(nullptr);
  j["saturated"] = v.saturated;
  j["applicable"] = v.applicable;
  return j;
}

Json to_json(const LiftingParameters& p) {
  Json j;
  j["c0"] = number(p.c0);
  j["c1"] = number(p.c1);
  j["c2"] = number(p.c2);
  j["d"] = p.d;
  j["n"] = p.n;
  j["norm_f"] = number(p.norm_f);
  j["f_star"] = number(p.f_star);
  j["L"] = number(p.L);
  j["lambda"] = number(p.lambda);
  j["k"] = p.k;
  j["k_saturated"] = p.k_saturated;
  j["empirical_min_h"] = number(p.empirical_min_h);
  j["claim_holds"] = p.claim_holds;
  return j;
}

Json to_json(const LiftingSearch& s) {
  Json j;
  j["found"] = s.found;
  j["k"] = s.found ? Json(s.k) : Json(nullptr);
  j["f_star"] = number(s.f_star);
  j["min_h"] = number(s.min_h);
  j["argmin"] = vector_json(s.argmin);
  j["min_h_by_k"] = vector_json(s.min_h_by_k);
  return j;
}

Json to_json(const LojasiewiczFit& f) {
  Json j;
  j["c2_exponent"] = number(f.c2_exponent);
  j["c3_scale"] = number(f.c3_scale);
  j["sample_count"] = f.sample_count;
  j["max_violation"] = number(f.max_violation);
  j["dist_error_bound"] = number(f.dist_error_bound);
  j["envelope_bins"] = f.envelope_bins;
  j["seed"] = f.seed;
  return j;
}

Json to_json(const RoundResult& r) {
  Json j;
  j["found"] = r.found;
  j["degree"] = r.found ? Json(r.degree) : Json(nullptr);
  if (r.polynomial) j["polynomial"] = to_string(*r.polynomial);
  j["min_value"] = number(r.min_value);
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

}  // namespace poslab
