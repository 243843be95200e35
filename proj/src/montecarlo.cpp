#include "kerrqnd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

namespace {

constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;

/// Centered running moments for (x, y, e): x injected signal, y detector
/// output, e estimator error. Merged with the pairwise update of Chan et al.
struct Moments {
  double n = 0.0;
  double mean_x = 0.0, mean_y = 0.0, mean_e = 0.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0, see = 0.0;

  void add(double x, double y, double e) {
    n += 1.0;
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    const double de = e - mean_e;
    mean_x += dx / n;
    mean_y += dy / n;
    mean_e += de / n;
    sxx += dx * (x - mean_x);
    syy += dy * (y - mean_y);
    sxy += dx * (y - mean_y);
    see += de * (e - mean_e);
  }

  static Moments merge(const Moments& a, const Moments& b) {
    if (a.n == 0.0) return b;
    if (b.n == 0.0) return a;
    Moments m;
    m.n = a.n + b.n;
    const double wa = a.n / m.n;
    const double wb = b.n / m.n;
    const double f = a.n * b.n / m.n;
    const double dx = b.mean_x - a.mean_x;
    const double dy = b.mean_y - a.mean_y;
    const double de = b.mean_e - a.mean_e;
    m.mean_x = wa * a.mean_x + wb * b.mean_x;
    m.mean_y = wa * a.mean_y + wb * b.mean_y;
    m.mean_e = wa * a.mean_e + wb * b.mean_e;
    m.sxx = a.sxx + b.sxx + f * dx * dx;
    m.syy = a.syy + b.syy + f * dy * dy;
    m.sxy = a.sxy + b.sxy + f * dx * dy;
    m.see = a.see + b.see + f * de * de;
    return m;
  }
};

/// Fixed-shape pairwise reduction, independent of how chunks were scheduled.
Moments reduce(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return Moments::merge(reduce(parts, lo, mid), reduce(parts, mid, hi));
}

}  // namespace

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream_id) : inc_((stream_id << 1u) | 1u) {
  (*this)();
  state_ += seed;
  (*this)();
}

Pcg32::result_type Pcg32::operator()() {
  const std::uint64_t old = state_;
  state_ = old * kMultiplier + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

void Pcg32::advance(std::uint64_t delta) {
  // Brown's jump-ahead for LCGs.
  std::uint64_t acc_mult = 1;
  std::uint64_t acc_plus = 0;
  std::uint64_t cur_mult = kMultiplier;
  std::uint64_t cur_plus = inc_;
  while (delta > 0) {
    if (delta & 1u) {
      acc_mult *= cur_mult;
      acc_plus = acc_plus * cur_mult + cur_plus;
    }
    cur_plus = (cur_mult + 1) * cur_plus;
    cur_mult *= cur_mult;
    delta >>= 1u;
  }
  state_ = acc_mult * state_ + acc_plus;
}

Pcg32 seeded_stream(std::uint64_t seed, std::uint64_t stream_id) { return Pcg32(seed, stream_id); }

McReport run_monte_carlo(const McConfig& cfg) {
  if (cfg.n_samples < 1) throw InvalidArgument("run_monte_carlo: n_samples must be >= 1");
  if (!(cfg.injected_dns >= 0.0)) throw InvalidArgument("run_monte_carlo: injected_dns must be >= 0");
  const ChainOutput analytic = measurement_error(cfg.chain);
  const ChainConfig& ch = cfg.chain;

  const double g = analytic.gain;
  const double vac_sd = std::sqrt(0.5);
  const Mat2 input = squeeze_matrix(ch.squeeze);
  const Mat2 cavity_and_amp = squeeze_matrix(ch.amplifier) * spm_matrix(ch.n_p, ch.gamma_s);
  const Quad2 h = homodyne_vector(ch.zeta);
  const double t = std::sqrt(ch.eta);
  const double l = std::sqrt(1.0 - ch.eta);

  const std::size_t chunks = (cfg.n_samples + kMcChunk - 1) / kMcChunk;
  std::vector<Moments> parts(chunks);

  auto run_chunk = [&](std::size_t k) {
    Pcg32 rng = seeded_stream(cfg.seed, k);
    std::normal_distribution<double> vacuum(0.0, vac_sd);
    std::normal_distribution<double> signal(0.0, 1.0);
    const std::size_t begin = k * kMcChunk;
    const std::size_t end = std::min(cfg.n_samples, begin + kMcChunk);
    Moments m;
    for (std::size_t i = begin; i < end; ++i) {
      const Quad2 z{vacuum(rng), vacuum(rng)};
      const double y = vacuum(rng);
      const double dn = cfg.injected_dns * signal(rng);
      const Quad2 a = input * z;
      const double d0 = t * dot(h, cavity_and_amp * a) + l * y;
      const double d = d0 + g * dn;
      m.add(dn, d, d / g - dn);
    }
    parts[k] = m;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t k = 0; k < chunks; ++k) run_chunk(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < chunks; k += workers) run_chunk(k);
      });
    }
  }

  const Moments all = reduce(parts, 0, parts.size());
  McReport rep;
  rep.n_samples = cfg.n_samples;
  rep.analytic_gain = g;
  rep.analytic_dns = analytic.delta_ns;
  const double n = all.n;
  rep.empirical_dns = n > 1.0 ? std::sqrt(all.see / (n - 1.0)) : 0.0;
  rep.stderr_dns = rep.empirical_dns / std::sqrt(2.0 * n);
  if (cfg.injected_dns > 0.0 && n > 2.0 && all.sxx > 0.0) {
    const double slope = all.sxy / all.sxx;
    const double resid = std::max(0.0, all.syy - slope * all.sxy) / (n - 2.0);
    rep.empirical_gain = slope;
    rep.stderr_gain = std::sqrt(resid / all.sxx);
  }
  return rep;
}

}  // namespace kerrqnd
