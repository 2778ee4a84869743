#include "poslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "poslab/basis.hpp"
#include "poslab/errors.hpp"

namespace poslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(const BoundInputs& b) {
  if (!(b.c > 0) || !std::isfinite(b.c)) throw ArgumentError("c must be a positive finite number");
  if (b.d < 1) throw ArgumentError("d must be >= 1");
  if (b.n < 1) throw ArgumentError("n must be >= 1");
  if (!(b.norm_f > 0) || !std::isfinite(b.norm_f)) throw ArgumentError("norm_f must be positive and finite");
}

void check_degree_inputs(const BoundInputs& b) {
  check_common(b);
  if (!(b.f_star > 0) || !std::isfinite(b.f_star)) throw ArgumentError("f_star must be positive and finite");
}

// d^2 n^d |f| / f*
double degree_ratio(const BoundInputs& b) {
  return static_cast<double>(b.d) * b.d * std::pow(static_cast<double>(b.n), b.d) * b.norm_f / b.f_star;
}

std::string format_point(const double* x, int n) {
  std::string s = "(";
  char buf[32];
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", x[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

bool is_unit_box(const Box& box) {
  return std::all_of(box.begin(), box.end(), [](const Interval& iv) { return iv.lo == -1.0 && iv.hi == 1.0; });
}

GridSpec unit_grid(const GridSpec& grid, int n) {
  GridSpec g = grid;
  if (g.box.empty()) g.box = unit_box(n);
  g.validate(n);
  if (!is_unit_box(g.box)) throw ArgumentError("lifting requires the grid box [-1,1]^n");
  return g;
}

// Throws unless every g_i <= 1 at every node of the grid.
void check_generators_at_most_one(const SemialgebraicSystem& system, const GridSpec& grid, Execution exec) {
  const TensorGrid tg(grid.box, grid.points_per_axis);
  const int n = system.dimension();
  for (int i = 0; i < system.size(); ++i) {
    const CompiledPolynomial g(system[i]);
    const ScanResult r = scan_min(
        tg, [&](const double* x) { return -g(x); }, [](const double*) { return true; }, exec);
    if (r.found && -r.value > 1.0) {
      std::vector<double> x(static_cast<std::size_t>(n));
      tg.point(r.index, x.data());
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", -r.value);
      throw ArgumentError("g_" + std::to_string(i + 1) + " = " + to_string(system[i]) + " exceeds 1 on [-1,1]^n: " +
                          "value " + buf + " at " + format_point(x.data(), n));
    }
  }
}

double grid_f_star(const Polynomial& f, const SemialgebraicSystem& system, const GridSpec& grid, Execution exec) {
  const MinimizationResult m = grid_min(f, system, grid, kDefaultFeasibilityTol, exec);
  if (!(m.minimum_value > 0)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", m.minimum_value);
    throw ArgumentError(std::string("lifting needs f* > 0 on S, grid minimum is ") + buf);
  }
  return m.minimum_value;
}

struct CompiledLifting {
  CompiledPolynomial f;
  std::vector<CompiledPolynomial> g;
  double lambda;
  double power;  // 2k

  double operator()(const double* x) const {
    double sum = 0.0;
    for (const CompiledPolynomial& gi : g) {
      const double v = gi(x);
      sum += std::pow(v - 1.0, power) * v;
    }
    return f(x) - lambda * sum;
  }
};

CompiledLifting compile_lifting(const Polynomial& f, const SemialgebraicSystem& system, double lambda,
                                std::int64_t k) {
  CompiledLifting h{CompiledPolynomial(f), {}, lambda, 2.0 * static_cast<double>(k)};
  for (const Polynomial& g : system.constraints()) h.g.emplace_back(g);
  return h;
}

double grid_min_h(const CompiledLifting& h, int n, const GridSpec& grid, Execution exec,
                  std::vector<double>* argmin = nullptr) {
  const MinimizationResult m =
      grid_min_function([&](const double* x) { return h(x); }, [](const double*) { return true; }, n, grid, exec);
  if (argmin) *argmin = m.argmin;
  return m.minimum_value;
}

}  // namespace

double schmuedgen_degree_bound(const BoundInputs& b) {
  check_degree_inputs(b);
  return b.c * b.d * b.d * (1.0 + std::pow(degree_ratio(b), b.c));
}

BoundValue putinar_degree_bound(const BoundInputs& b) {
  check_degree_inputs(b);
  BoundValue out;
  const double arg = std::pow(degree_ratio(b), b.c);
  if (!(arg <= kExpSaturation)) {
    out.value = kInf;
    out.saturated = true;
    return out;
  }
  out.value = b.c * std::exp(arg);
  if (std::isinf(out.value)) out.saturated = true;
  return out;
}

BoundValue gap_bound(const BoundInputs& b) {
  check_common(b);
  if (b.k < 0) throw ArgumentError("k must be >= 0");
  BoundValue out;
  const double arg = std::pow(2.0 * b.d * b.d * std::pow(static_cast<double>(b.n), b.d), b.c);
  out.threshold = arg > kExpSaturation ? kInf : b.c * std::exp(arg);
  if (!(static_cast<double>(b.k) > out.threshold)) {
    out.applicable = false;
    out.value = kInf;
    return out;
  }
  const double numerator = 6.0 * std::pow(static_cast<double>(b.d), 3) *
                           std::pow(static_cast<double>(b.n), 2 * b.d) * b.norm_f;
  out.value = numerator / std::pow(std::log(static_cast<double>(b.k) / b.c), 1.0 / b.c);
  return out;
}

Polynomial lifting_transform(const Polynomial& f, const SemialgebraicSystem& system, double lambda, int k,
                             const LiftingCaps& caps) {
  if (f.dimension() != system.dimension()) throw ArgumentError("objective and system dimension mismatch");
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be >= 0 and finite");
  if (k < 1) throw ArgumentError("k must be >= 1");
  const int n = f.dimension();
  long long degree = f.degree();
  for (const Polynomial& g : system.constraints()) degree = std::max(degree, (2LL * k + 1) * g.degree());
  if (degree > caps.max_degree) {
    throw CapacityError("lifted polynomial degree " + std::to_string(degree) + " exceeds cap " +
                        std::to_string(caps.max_degree));
  }
  if (basis_size(n, static_cast<int>(degree)) > caps.max_terms) {
    throw CapacityError("lifted polynomial may have more than " +
                        std::to_string(static_cast<long long>(caps.max_terms)) + " terms");
  }
  Polynomial h = f;
  if (lambda == 0.0) return h;
  for (const Polynomial& g : system.constraints()) h -= lambda * (pow(g - 1.0, 2 * k) * g);
  return h;
}

double lifting_value(const Polynomial& f, const SemialgebraicSystem& system, double lambda, std::int64_t k,
                     std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) throw ArgumentError("point dimension mismatch");
  return compile_lifting(f, system, lambda, k)(x.data());
}

LiftingSearch find_lifting_k(const Polynomial& f, const SemialgebraicSystem& system, double lambda,
                             const GridSpec& grid, int k_max, Execution exec) {
  if (f.dimension() != system.dimension()) throw ArgumentError("objective and system dimension mismatch");
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be >= 0 and finite");
  if (k_max < 1) throw ArgumentError("k_max must be >= 1");
  const int n = f.dimension();
  const GridSpec g = unit_grid(grid, n);
  check_generators_at_most_one(system, g, exec);

  LiftingSearch out;
  out.f_star = grid_f_star(f, system, g, exec);
  const double target = 0.5 * out.f_star * (1.0 - 1e-6);
  for (int k = 1; k <= k_max; ++k) {
    std::vector<double> argmin;
    const double m = grid_min_h(compile_lifting(f, system, lambda, k), n, g, exec, &argmin);
    out.min_h_by_k.push_back(m);
    out.k = k;
    out.min_h = m;
    out.argmin = std::move(argmin);
    if (m >= target) {
      out.found = true;
      return out;
    }
  }
  return out;
}

LiftingParameters lifting_parameters(const Polynomial& f, const SemialgebraicSystem& system, double c0, double c1,
                                     double c2, const GridSpec& grid, Execution exec) {
  if (f.dimension() != system.dimension()) throw ArgumentError("objective and system dimension mismatch");
  for (double c : {c0, c1, c2}) {
    if (!(c > 0) || !std::isfinite(c)) throw ArgumentError("c0, c1, c2 must be positive and finite");
  }
  if (f.degree() < 1) throw ArgumentError("lifting needs deg f >= 1");
  const int n = f.dimension();
  const GridSpec g = unit_grid(grid, n);
  check_generators_at_most_one(system, g, exec);

  LiftingParameters p;
  p.c0 = c0;
  p.c1 = c1;
  p.c2 = c2;
  p.d = f.degree();
  p.n = n;
  p.norm_f = weighted_norm(f);
  p.f_star = grid_f_star(f, system, g, exec);
  const double dn = static_cast<double>(p.d) * p.d * std::pow(static_cast<double>(n), p.d - 1);
  p.L = dn * p.norm_f / p.f_star;
  p.lambda = c1 * dn * p.norm_f * std::pow(p.L, c2);

  // Smallest k >= 1 with 2k + 1 >= c0 (1 + L^c0).
  const double rhs = c0 * (1.0 + std::pow(p.L, c0));
  const double k_real = std::ceil((rhs - 1.0) / 2.0);
  if (!(k_real <= static_cast<double>(kMaxLiftingK))) {
    p.k = kMaxLiftingK;
    p.k_saturated = true;
  } else {
    p.k = std::max<std::int64_t>(1, static_cast<std::int64_t>(k_real));
    while (2.0 * static_cast<double>(p.k) + 1.0 < rhs) ++p.k;
  }
  p.empirical_min_h = grid_min_h(compile_lifting(f, system, p.lambda, p.k), n, g, exec);
  p.claim_holds = p.empirical_min_h >= 0.5 * p.f_star * (1.0 - 1e-6);
  return p;
}

LojasiewiczFit lojasiewicz_estimate(const SemialgebraicSystem& system, const GridSpec& grid, int samples,
                                    std::uint64_t seed, Execution exec) {
  const int n = system.dimension();
  if (samples < 2) throw ArgumentError("need at least 2 samples");
  GridSpec spec = grid;
  if (spec.box.empty()) spec.box = unit_box(n);
  spec.validate(n);
  const std::vector<double> feasible = feasible_grid_points(system, spec, kDefaultFeasibilityTol, exec);
  if (feasible.empty()) throw InfeasibleAtResolution("S has no point on the grid");

  // Rejection sampling of the box minus S.
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> axis;
  for (const Interval& iv : spec.box) axis.emplace_back(iv.lo, iv.hi);
  std::vector<double> points, violation;
  const long long max_attempts = 1000LL * samples;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (long long attempt = 0; attempt < max_attempts && static_cast<int>(violation.size()) < samples; ++attempt) {
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(i)](rng);
    const double v = -min_violation(system, x);
    if (v > 0) {
      points.insert(points.end(), x.begin(), x.end());
      violation.push_back(v);
    }
  }
  if (violation.empty()) throw DegenerateFitError("no sample fell outside S");

  const std::vector<double> dist = nearest_distances(points, feasible, n, exec);
  std::vector<double> log_d, log_v;
  for (std::size_t s = 0; s < violation.size(); ++s) {
    if (dist[s] > 0) {
      log_d.push_back(std::log(dist[s]));
      log_v.push_back(std::log(violation[s]));
    }
  }
  if (log_d.size() < 2) throw DegenerateFitError("fewer than two samples at positive distance from S");

  // Lower envelope: the smallest log violation in each of equal-width bins
  // of log distance.
  constexpr int kBins = 20;
  const double lo = *std::min_element(log_d.begin(), log_d.end());
  const double hi = *std::max_element(log_d.begin(), log_d.end());
  if (!(hi > lo)) throw DegenerateFitError("all samples are at the same distance from S");
  std::vector<int> best(kBins, -1);
  for (std::size_t s = 0; s < log_d.size(); ++s) {
    const int b = std::min(kBins - 1, static_cast<int>((log_d[s] - lo) / (hi - lo) * kBins));
    if (best[static_cast<std::size_t>(b)] < 0 || log_v[s] < log_v[static_cast<std::size_t>(best[static_cast<std::size_t>(b)])]) {
      best[static_cast<std::size_t>(b)] = static_cast<int>(s);
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int s : best) {
    if (s < 0) continue;
    const double u = log_d[static_cast<std::size_t>(s)];
    const double w = log_v[static_cast<std::size_t>(s)];
    sx += u;
    sy += w;
    sxx += u * u;
    sxy += u * w;
    ++used;
  }
  const double denom = used * sxx - sx * sx;
  if (used < 2 || !(denom > 0)) throw DegenerateFitError("lower envelope has fewer than two distinct bins");
  const double slope = (used * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / used;
  if (!(slope > 0)) throw DegenerateFitError("fitted exponent is not positive");

  // log v >= c2 log d - log c3 must hold on every sample.
  double log_c3 = -intercept;
  for (std::size_t s = 0; s < log_d.size(); ++s) log_c3 = std::max(log_c3, slope * log_d[s] - log_v[s]);

  LojasiewiczFit fit;
  fit.c2_exponent = slope;
  fit.c3_scale = std::exp(log_c3) * (1.0 + 1e-12);
  fit.sample_count = static_cast<int>(violation.size());
  fit.dist_error_bound = TensorGrid(spec.box, spec.points_per_axis).half_cell_diagonal();
  fit.envelope_bins = used;
  fit.seed = seed;
  for (std::size_t s = 0; s < violation.size(); ++s) {
    fit.max_violation = std::max(fit.max_violation, std::pow(dist[s], slope) - fit.c3_scale * violation[s]);
  }
  return fit;
}

Polynomial rounded_hypercube(int n, int d) {
  if (n < 1 || d < 1) throw ArgumentError("rounded hypercube needs n >= 1 and d >= 1");
  Polynomial p = Polynomial::constant(n, 1.0 - 1.0 / d);
  for (int i = 0; i < n; ++i) p.add_term(Monomial::variable(n, i, 2 * d), -1.0);
  return p;
}

RoundResult round_hypercube_degree(const SemialgebraicSystem& system, const GridSpec& grid, int d_max,
                                   Execution exec) {
  const int n = system.dimension();
  if (d_max < 1) throw ArgumentError("d_max must be >= 1");
  GridSpec spec = grid;
  if (spec.box.empty()) spec.box = unit_box(n);
  spec.validate(n);

  GridSpec wide = spec;
  for (Interval& iv : wide.box) {
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.75 * (iv.hi - iv.lo);
    iv = {mid - half, mid + half};
  }
  // Containment is checked on the given grid and on the widened one, whose
  // nodes generally differ.
  auto check_inside = [&](const std::vector<double>& points) {
    for (std::size_t p = 0; p < points.size(); p += static_cast<std::size_t>(n)) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(points[p + static_cast<std::size_t>(i)]) >= 1.0) {
          throw ArgumentError("S is not inside the open cube (-1,1)^n: feasible point " +
                              format_point(points.data() + p, n));
        }
      }
    }
  };
  const std::vector<double> pts = feasible_grid_points(system, spec, kDefaultFeasibilityTol, exec);
  check_inside(pts);
  check_inside(feasible_grid_points(system, wide, kDefaultFeasibilityTol, exec));
  if (pts.empty()) throw InfeasibleAtResolution("S has no point on the grid");
  RoundResult out;
  for (int d = 1; d <= d_max; ++d) {
    const Polynomial p = rounded_hypercube(n, d);
    const CompiledPolynomial cp(p);
    double lo = kInf;
    for (std::size_t q = 0; q < pts.size(); q += static_cast<std::size_t>(n)) lo = std::min(lo, cp(pts.data() + q));
    out.degree = d;
    out.min_value = lo;
    if (lo > 0) {
      out.found = true;
      out.polynomial = p;
      return out;
    }
  }
  out.reason = "p_d is not positive on the feasible grid points for any d <= " + std::to_string(d_max);
  return out;
}

}  // namespace poslab
