#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "toeptik/solver.hpp"

namespace toeptik {

/// Experiment stream tags keep the per-trial generators of different harnesses disjoint.
enum class Stream : std::uint64_t { Oracle = 1, Accuracy = 2, Complexity = 3, CgEquivalence = 4, Nufft = 5 };

std::mt19937_64 trial_rng(std::uint64_t seed, Stream stream, Variant variant, std::size_t n, std::size_t trial);

cplx complex_normal(std::mt19937_64& rng);
CVector complex_normal_vector(std::mt19937_64& rng, std::size_t len);
ToeplitzSpec random_toeplitz(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

/// Random problem with standard complex-normal data; |beta|^2 = sqrt(n) for
/// l2 and a_0 = 10 sqrt(n) for the Gramian. The right-hand side is T^H b for
/// general and l2, y for the Gramian.
ProblemSpec random_problem(std::mt19937_64& rng, Variant variant, std::size_t n, std::size_t m = 0,
                           std::size_t p = 0);

/// Free parameters of an n-column problem: 4n-2, 2n-1, 3n-2.
std::size_t free_parameters(Variant variant, std::size_t n);

struct ExperimentConfig {
  Variant variant = Variant::General;
  std::vector<std::size_t> sizes{512, 1024, 2048, 4096};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t n_lim = 256;
  double pivot_threshold = 1e-8;
  std::optional<FillPolicy> fill;

  void validate() const;
  SolverConfig solver_config() const;
};

struct ComplexityFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double r_squared = 0.0;
};

/// Least squares for t = c1 n log2^2 n + c2 n log2 n.
ComplexityFit fit_complexity(std::span<const double> ns, std::span<const double> times);

struct ComplexityRow {
  Variant variant;
  std::size_t n;
  std::size_t params;
  double mean_s;
  double median_s;
};

struct ComplexityReport {
  std::vector<ComplexityRow> rows;
  ComplexityFit fit;  // fitted on the medians
};

ComplexityReport run_complexity(const ExperimentConfig& cfg);

struct AccuracyRow {
  Variant variant;
  std::size_t n;
  double max_err;
  std::size_t difficult_points;  // summed over trials
};

/// Called once per trial with the problem, its source vector, and the full solve record.
using SolveObserver = std::function<void(const ProblemSpec&, const CVector&, const SolveDetail&)>;

/// Source-vector protocol: y = (G_T + G_L) x, solve, max |x_hat - x| over entries and trials.
std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& cfg, const SolveObserver& observe = {});

struct CgEquivalenceRow {
  Variant variant;
  std::size_t n;
  double mean_iters;
  double cg_max_err;
  double direct_max_err;
};

std::vector<CgEquivalenceRow> run_cg_equivalence(const ExperimentConfig& cfg);

struct NufftConfig {
  std::size_t n = 1024;
  std::size_t samples = 1024;
  std::size_t components = 3;
  double f_max = 0.02;
  double regularizer_scale = 1.0;
  std::uint64_t seed = 1;
  std::size_t n_lim = 256;
  double pivot_threshold = 1e-8;

  void validate() const;
};

/// Cell widths of sorted points on the circle [-1/2, 1/2): half the gap to
/// each neighbour, wrapping around. Returned in the input order; sums to 1.
std::vector<double> voronoi_weights(std::span<const double> freqs);

/// g(d) = sum_k w_k exp(j 2 pi f_k d), d = 0..n-1, as a Hermitian Toeplitz spec.
HermitianToeplitzSpec weighted_fourier_gramian(std::span<const double> freqs, std::span<const double> weights,
                                               std::size_t n);

/// X_k = sum_s x_s exp(-j 2 pi f_k s).
CVector nonuniform_samples(std::span<const cplx> x, std::span<const double> freqs);

/// (A^H W X)_r = sum_k w_k X_k exp(j 2 pi f_k r).
CVector weighted_adjoint(std::span<const cplx> X, std::span<const double> freqs, std::span<const double> weights,
                         std::size_t n);

/// Second-order difference with diagonal 2e4 and off-diagonals -1e4, times scale.
ToeplitzSpec second_difference(std::size_t n, double scale);

struct NufftReport {
  CVector signal;
  CVector x_interp;
  CVector x_cg;
  CVector residual_interp;  // signal - x_interp
  CVector residual_cg;
  double interp_residual_norm = 0.0;
  double cg_residual_norm = 0.0;
  double interp_rel_error = 0.0;
  double cg_rel_error = 0.0;
  double interp_time = 0.0;
  std::size_t cg_iterations = 0;
  TanIntDiagnostics diagnostics;
};

NufftReport run_nufft(const NufftConfig& cfg);

}  // namespace toeptik
