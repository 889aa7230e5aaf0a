#include "toeptik/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace toeptik {
namespace {

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); }

/// Same problem, right-hand side replaced by y = (G_T + G_L) x for a random x.
ProblemSpec with_source(ProblemSpec problem, const CVector& x) {
  problem.y = apply_normal_operator(problem, x);
  return problem;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, Stream stream, Variant variant, std::size_t n, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(variant),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

cplx complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, std::sqrt(0.5));
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

CVector complex_normal_vector(std::mt19937_64& rng, std::size_t len) {
  CVector v(len);
  for (auto& x : v) x = complex_normal(rng);
  return v;
}

ToeplitzSpec random_toeplitz(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  return ToeplitzSpec{rows, cols, complex_normal_vector(rng, rows + cols - 1)};
}

ProblemSpec random_problem(std::mt19937_64& rng, Variant variant, std::size_t n, std::size_t m, std::size_t p) {
  if (m == 0) m = n;
  if (p == 0) p = n;
  switch (variant) {
    case Variant::General: {
      ToeplitzSpec T = random_toeplitz(rng, m, n);
      ToeplitzSpec L = random_toeplitz(rng, p, n);
      return ProblemSpec::general(std::move(T), std::move(L), complex_normal_vector(rng, m));
    }
    case Variant::L2Penalty: {
      ToeplitzSpec T = random_toeplitz(rng, m, n);
      const cplx beta{std::pow(double(n), 0.25), 0.0};
      return ProblemSpec::l2(std::move(T), beta, complex_normal_vector(rng, m));
    }
    case Variant::ToeplitzGramian: {
      HermitianToeplitzSpec G{n, complex_normal_vector(rng, n)};
      G.gen[0] = cplx{10.0 * std::sqrt(double(n)), 0.0};
      ToeplitzSpec L = random_toeplitz(rng, p, n);
      return ProblemSpec::gramian(std::move(G), std::move(L), complex_normal_vector(rng, n));
    }
  }
  throw ShapeError("unknown variant");
}

std::size_t free_parameters(Variant variant, std::size_t n) {
  switch (variant) {
    case Variant::General: return 4 * n - 2;
    case Variant::L2Penalty: return 2 * n - 1;
    case Variant::ToeplitzGramian: return 3 * n - 2;
  }
  return 0;
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ShapeError("at least one size is required");
  for (auto n : sizes)
    if (n == 0) throw ShapeError("sizes must be positive");
  if (trials < 1) throw ShapeError("trials must be >= 1");
  if (n_lim < 1) throw ShapeError("nlim must be >= 1");
  if (!(pivot_threshold > 0.0 && pivot_threshold < 1.0)) throw ShapeError("pivot threshold must lie in (0, 1)");
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig s;
  s.n_lim = n_lim;
  s.pivot_threshold = pivot_threshold;
  s.fill = fill;
  s.verify = false;
  return s;
}

ComplexityFit fit_complexity(std::span<const double> ns, std::span<const double> times) {
  if (ns.size() != times.size() || ns.size() < 2) throw ShapeError("complexity fit needs >= 2 matched points");
  const auto k = static_cast<Eigen::Index>(ns.size());
  Eigen::MatrixXd A(k, 2);
  Eigen::VectorXd t(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double n = ns[std::size_t(i)];
    const double lg = std::log2(n);
    A(i, 0) = n * lg * lg;
    A(i, 1) = n * lg;
    t(i) = times[std::size_t(i)];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(t);
  const double ss_res = (A * c - t).squaredNorm();
  const double ss_tot = (t.array() - t.mean()).square().sum();
  ComplexityFit fit{c(0), c(1), 1.0};
  if (ss_tot > 0.0) fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

ComplexityReport run_complexity(const ExperimentConfig& cfg) {
  cfg.validate();
  const SolverConfig scfg = cfg.solver_config();
  ComplexityReport rep;
  std::vector<double> ns, medians;
  for (auto n : cfg.sizes) {
    std::vector<double> times;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      auto rng = trial_rng(cfg.seed, Stream::Complexity, cfg.variant, n, t);
      const ProblemSpec problem = random_problem(rng, cfg.variant, n);
      times.push_back(solve_tikhonov(problem, scfg).wall_time);
    }
    rep.rows.push_back({cfg.variant, n, free_parameters(cfg.variant, n), mean(times), median(times)});
    ns.push_back(double(n));
    medians.push_back(rep.rows.back().median_s);
  }
  if (ns.size() >= 2) rep.fit = fit_complexity(ns, medians);
  return rep;
}

std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& cfg, const SolveObserver& observe) {
  cfg.validate();
  const SolverConfig scfg = cfg.solver_config();
  std::vector<AccuracyRow> rows;
  for (auto n : cfg.sizes) {
    AccuracyRow row{cfg.variant, n, 0.0, 0};
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      auto rng = trial_rng(cfg.seed, Stream::Accuracy, cfg.variant, n, t);
      const ProblemSpec base = random_problem(rng, cfg.variant, n);
      const CVector x = complex_normal_vector(rng, n);
      const ProblemSpec problem = with_source(base, x);
      const SolveDetail detail = solve_tikhonov_detailed(problem, scfg);
      const SolveReport& rep = detail.report;
      if (observe) observe(problem, x, detail);
      row.max_err = std::max(row.max_err, max_abs_diff(rep.x_hat, x));
      row.difficult_points += rep.diagnostics.difficult_points;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CgEquivalenceRow> run_cg_equivalence(const ExperimentConfig& cfg) {
  cfg.validate();
  const SolverConfig scfg = cfg.solver_config();
  std::vector<CgEquivalenceRow> rows;
  for (auto n : cfg.sizes) {
    CgEquivalenceRow row{cfg.variant, n, 0.0, 0.0, 0.0};
    double iters = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      auto rng = trial_rng(cfg.seed, Stream::CgEquivalence, cfg.variant, n, t);
      const ProblemSpec base = random_problem(rng, cfg.variant, n);
      const CVector x = complex_normal_vector(rng, n);
      const ProblemSpec problem = with_source(base, x);
      const SolveReport rep = solve_tikhonov(problem, scfg);
      CGConfig cg;
      cg.max_iterations = 100000;
      cg.time_budget = rep.wall_time;
      cg.tolerance = 0.0;
      const CGResult cgr = cg_solve(problem, cg);
      iters += double(cgr.iterations);
      row.direct_max_err = std::max(row.direct_max_err, max_abs_diff(rep.x_hat, x));
      row.cg_max_err = std::max(row.cg_max_err, max_abs_diff(cgr.x, x));
    }
    row.mean_iters = iters / double(cfg.trials);
    rows.push_back(row);
  }
  return rows;
}

void NufftConfig::validate() const {
  if (n < 1) throw ShapeError("signal length must be >= 1");
  if (samples < 1) throw ShapeError("sample count must be >= 1");
  if (!(f_max > 0.0 && f_max < 0.5)) throw ShapeError("f_max must lie in (0, 1/2)");
  if (!(regularizer_scale >= 0.0)) throw ShapeError("regularizer scale must be non-negative");
}

std::vector<double> voronoi_weights(std::span<const double> freqs) {
  const std::size_t K = freqs.size();
  std::vector<double> w(K, 1.0);
  if (K <= 1) return w;
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return freqs[a] < freqs[b]; });
  for (std::size_t i = 0; i < K; ++i) {
    const double left = i == 0 ? freqs[order[K - 1]] - 1.0 : freqs[order[i - 1]];
    const double right = i + 1 == K ? freqs[order[0]] + 1.0 : freqs[order[i + 1]];
    w[order[i]] = 0.5 * (right - left);
  }
  return w;
}

HermitianToeplitzSpec weighted_fourier_gramian(std::span<const double> freqs, std::span<const double> weights,
                                               std::size_t n) {
  if (freqs.size() != weights.size()) throw ShapeError("frequency and weight counts differ");
  HermitianToeplitzSpec G{n, CVector(n, cplx{})};
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double theta = 2.0 * std::numbers::pi * freqs[k];
    for (std::size_t d = 0; d < n; ++d) G.gen[d] += weights[k] * std::polar(1.0, theta * double(d));
  }
  G.gen[0] = cplx{G.gen[0].real(), 0.0};
  return G;
}

CVector nonuniform_samples(std::span<const cplx> x, std::span<const double> freqs) {
  CVector X(freqs.size(), cplx{});
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double theta = -2.0 * std::numbers::pi * freqs[k];
    for (std::size_t s = 0; s < x.size(); ++s) X[k] += x[s] * std::polar(1.0, theta * double(s));
  }
  return X;
}

CVector weighted_adjoint(std::span<const cplx> X, std::span<const double> freqs, std::span<const double> weights,
                         std::size_t n) {
  CVector out(n, cplx{});
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double theta = 2.0 * std::numbers::pi * freqs[k];
    const cplx wx = weights[k] * X[k];
    for (std::size_t r = 0; r < n; ++r) out[r] += wx * std::polar(1.0, theta * double(r));
  }
  return out;
}

ToeplitzSpec second_difference(std::size_t n, double scale) {
  CVector col(n, cplx{}), row(n, cplx{});
  col[0] = row[0] = 2e4 * scale;
  if (n > 1) col[1] = row[1] = -1e4 * scale;
  return ToeplitzSpec::from_col_row(col, row);
}

NufftReport run_nufft(const NufftConfig& cfg) {
  cfg.validate();
  auto rng = trial_rng(cfg.seed, Stream::Nufft, Variant::ToeplitzGramian, cfg.n, cfg.samples);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  NufftReport rep;
  rep.signal.assign(cfg.n, cplx{});
  for (std::size_t c = 0; c < cfg.components; ++c) {
    const double f = cfg.f_max * unit(rng);
    const double amp = 0.5 + unit(rng);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    for (std::size_t s = 0; s < cfg.n; ++s)
      rep.signal[s] += amp * std::cos(2.0 * std::numbers::pi * f * double(s) + phase);
  }

  std::vector<double> freqs(cfg.samples);
  for (auto& f : freqs) f = 0.5 * (unit(rng) + unit(rng)) - 0.5;
  const std::vector<double> w = voronoi_weights(freqs);

  const CVector X = nonuniform_samples(rep.signal, freqs);
  const ProblemSpec problem = ProblemSpec::gramian(weighted_fourier_gramian(freqs, w, cfg.n),
                                                   second_difference(cfg.n, cfg.regularizer_scale),
                                                   weighted_adjoint(X, freqs, w, cfg.n));
  SolverConfig scfg;
  scfg.n_lim = cfg.n_lim;
  scfg.pivot_threshold = cfg.pivot_threshold;
  scfg.verify = false;
  const SolveReport sol = solve_tikhonov(problem, scfg);
  rep.x_interp = sol.x_hat;
  rep.interp_time = sol.wall_time;
  rep.diagnostics = sol.diagnostics;

  CGConfig cg;
  cg.max_iterations = 1000000;
  cg.time_budget = sol.wall_time;
  cg.tolerance = 0.0;
  const CGResult cgr = cg_solve(problem, cg);
  rep.x_cg = cgr.x;
  rep.cg_iterations = cgr.iterations;

  const double sig = norm2(rep.signal);
  rep.residual_interp.resize(cfg.n);
  rep.residual_cg.resize(cfg.n);
  for (std::size_t s = 0; s < cfg.n; ++s) {
    rep.residual_interp[s] = rep.signal[s] - rep.x_interp[s];
    rep.residual_cg[s] = rep.signal[s] - rep.x_cg[s];
  }
  rep.interp_residual_norm = norm2(rep.residual_interp);
  rep.cg_residual_norm = norm2(rep.residual_cg);
  rep.interp_rel_error = rep.interp_residual_norm / sig;
  rep.cg_rel_error = rep.cg_residual_norm / sig;
  return rep;
}

}  // namespace toeptik
