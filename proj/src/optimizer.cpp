#include "kerrqnd/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace detail {

LineMinimum golden_section(const std::function<double(double)>& f, double a, double b, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  LineMinimum out;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;
  // Bracket shrinks by 0.618 per step; the cap only matters for ulp-level stalls.
  for (int iter = 0; iter < 400 && (b - a) > x_tol && c < d; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  if (fc < fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  out.width = b - a;
  return out;
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> start, const SimplexOptions& options) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> vals(n + 1);
  SimplexResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[i][k] - pts[0][k]));
    }
    return d;
  };
  auto along = [&](double t, const std::vector<double>& from, std::vector<double>& dst) {
    for (std::size_t k = 0; k < n; ++k) dst[k] = centroid[k] + t * (from[k] - centroid[k]);
  };

  for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    {
      std::vector<std::vector<double>> p2(n + 1);
      std::vector<double> v2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        p2[i] = std::move(pts[order[i]]);
        v2[i] = vals[order[i]];
      }
      pts = std::move(p2);
      vals = std::move(v2);
    }
    const double spread = vals[n] - vals[0];
    const double diam = diameter();
    if ((spread <= options.f_tol * std::abs(vals[0]) && diam <= options.x_tol) || diam <= options.x_floor) {
      out.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    along(-1.0, pts[n], trial);
    const double fr = eval(trial);
    if (fr < vals[0]) {
      along(-2.0, pts[n], trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[n] = trial2;
        vals[n] = fe;
      } else {
        pts[n] = trial;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = trial;
      vals[n] = fr;
      continue;
    }
    if (fr < vals[n]) {
      along(-0.5, pts[n], trial2);
      const double fc = eval(trial2);
      if (fc <= fr) {
        pts[n] = trial2;
        vals[n] = fc;
        continue;
      }
    } else {
      along(0.5, pts[n], trial2);
      const double fc = eval(trial2);
      if (fc < vals[n]) {
        pts[n] = trial2;
        vals[n] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
      vals[i] = eval(pts[i]);
    }
  }

  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  out.x = pts[best];
  out.value = vals[best];
  out.diameter = diameter();
  return out;
}

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  double w = std::fmod(a, kPi);
  if (w < 0.0) w += kPi;
  if (w >= kPi) w -= kPi;
  return w;
}

/// Chain objective with an evaluation budget.
class AngleObjective {
 public:
  AngleObjective(const ChainConfig& cfg, std::size_t budget) : cfg_(cfg), budget_(budget) {}

  double operator()(double theta, double phi, double zeta) {
    if (++count_ > budget_) {
      throw NonConvergence("angle search exceeded its budget of " + std::to_string(budget_) +
                           " evaluations");
    }
    ChainConfig c = cfg_;
    c.squeeze.theta = theta;
    c.amplifier.theta = phi;
    c.zeta = zeta;
    try {
      const ChainOutput o = measurement_error(c);
      return o.delta_ns * o.delta_ns;
    } catch (const ZeroGain&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  std::size_t count() const { return count_; }

 private:
  ChainConfig cfg_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

struct Profiled {
  double value;
  double theta;
  double phi;
};

/// Minimum over theta at fixed (phi, zeta). The variance is exactly
/// a + b cos(2 theta) + c sin(2 theta) and the gain does not involve theta,
/// so three samples fix the curve and a fourth evaluates its minimum.
Profiled profile_theta(AngleObjective& obj, double phi, double zeta) {
  std::array<double, 3> f{};
  double b = 0.0;
  double c = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double alpha = 2.0 * kPi * k / 3.0;
    f[k] = obj(alpha / 2.0, phi, zeta);
    if (!std::isfinite(f[k])) return {f[k], 0.0, phi};
    b += 2.0 / 3.0 * f[k] * std::cos(alpha);
    c += 2.0 / 3.0 * f[k] * std::sin(alpha);
  }
  const double theta = wrap_angle(0.5 * std::atan2(-c, -b));
  Profiled best{obj(theta, phi, zeta), theta, phi};
  for (int k = 0; k < 3; ++k) {
    if (f[k] < best.value) best = {f[k], kPi * k / 3.0, phi};
  }
  return best;
}

/// Minimum over (theta, phi) with the offset zeta - phi held fixed: a scan,
/// then golden section around the best sample. Along phi the minimum can be
/// very narrow at strong amplification, so `x_tol` of zero runs the search
/// down to the last representable bracket.
Profiled profile_phi(AngleObjective& obj, double offset, int scan, double x_tol) {
  const double h = kPi / scan;
  Profiled best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (int k = 0; k < scan; ++k) {
    const Profiled p = profile_theta(obj, k * h, k * h + offset);
    if (p.value < best.value) best = p;
  }
  if (!std::isfinite(best.value)) return best;
  Profiled found = best;
  detail::golden_section(
      [&](double phi) {
        const Profiled p = profile_theta(obj, phi, phi + offset);
        if (p.value < found.value) found = p;
        return p.value;
      },
      best.phi - h, best.phi + h, x_tol);
  return found;
}

struct Candidate {
  double value;
  double theta;
  double phi;
  double zeta;
  bool converged;

  auto key() const { return std::tie(value, theta, phi, zeta); }
};

}  // namespace

OptimizationResult minimize_angles(const ChainConfig& cfg, const AngleSearchOptions& options) {
  cfg.validate();
  if (options.grid_points < 4) throw InvalidArgument("minimize_angles: grid_points must be >= 4");
  if (!(options.tol > 0.0)) throw InvalidArgument("minimize_angles: tol must be positive");
  AngleObjective obj(cfg, options.max_evaluations);
  const int g = options.grid_points;
  const double h = kPi / g;

  // Coarse 3-D grid; each (phi, zeta) cell keeps its best theta.
  struct Cell {
    double value;
    int i;
    int j;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(g) * g);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < g; ++k) best = std::min(best, obj(k * h, i * h, j * h));
      cells.push_back({best, i, j});
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.value < b.value; });

  // Starts: the best cells with distinct offsets j - i (mod g); cells along
  // one diagonal share a valley and would repeat the same descent.
  std::vector<int> offsets;
  for (const Cell& c : cells) {
    if (static_cast<int>(offsets.size()) >= options.starts || !std::isfinite(c.value)) break;
    const int off = ((c.j - c.i) % g + g) % g;
    if (std::find(offsets.begin(), offsets.end(), off) == offsets.end()) offsets.push_back(off);
  }
  if (offsets.empty()) throw ZeroGain("minimize_angles: no grid point has non-zero gain");

  // Local descent runs over the offset zeta - phi; phi and theta are profiled out.
  auto profiled = [&](std::span<const double> x) { return profile_phi(obj, x[0], g, 0.0).value; };
  detail::SimplexOptions local;
  local.step = h / 2.0;
  local.f_tol = options.tol;
  local.max_iterations = 500;

  std::vector<Candidate> found;
  for (const int off : offsets) {
    const std::array<double, 1> x0{off * h};
    const detail::SimplexResult first = detail::nelder_mead(profiled, x0, local);
    // One restart from the best point with a fresh, smaller simplex.
    detail::SimplexOptions again = local;
    again.step = h / 8.0;
    const detail::SimplexResult second = detail::nelder_mead(profiled, first.x, again);
    const detail::SimplexResult& r = second.value <= first.value ? second : first;
    const Profiled p = profile_phi(obj, r.x[0], g, 0.0);
    found.push_back({p.value, wrap_angle(p.theta), wrap_angle(p.phi), wrap_angle(p.phi + r.x[0]),
                     r.converged});
  }

  const Candidate& best = *std::min_element(
      found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.key() < b.key(); });
  OptimizationResult out;
  out.theta = best.theta;
  out.phi = best.phi;
  out.zeta = best.zeta;
  out.best_value = best.value;
  out.evaluations = obj.count();
  out.converged = best.converged;
  return out;
}

OptimizationResult minimize_np(const ChainConfig& cfg, const NpSearchOptions& options) {
  if (!(options.lo > 0.0 && options.hi > options.lo)) {
    throw InvalidArgument("minimize_np: bracket must satisfy 0 < lo < hi");
  }
  std::size_t evaluations = 0;
  OptimizationResult last;
  auto objective = [&](double log_n) {
    ChainConfig c = cfg;
    c.n_p = std::exp(log_n);
    last = minimize_angles(c, options.angles);
    evaluations += last.evaluations;
    return last.best_value;
  };
  const double a = std::log(options.lo);
  const double b = std::log(options.hi);
  const detail::LineMinimum line = detail::golden_section(objective, a, b, options.log_tol);
  const double edge = 1e3 * options.log_tol;
  if (line.x - a < edge || b - line.x < edge) {
    throw NoFiniteOptimum("minimize_np: error is monotone across the bracket [" +
                          std::to_string(options.lo) + ", " + std::to_string(options.hi) + "]");
  }
  ChainConfig c = cfg;
  c.n_p = std::exp(line.x);
  OptimizationResult out = minimize_angles(c, options.angles);
  out.n_p = c.n_p;
  out.evaluations += evaluations;
  out.converged = out.converged && line.width <= options.log_tol;
  return out;
}

}  // namespace kerrqnd
