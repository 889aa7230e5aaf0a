#pragma once

#include <optional>

#include "toeptik/extension.hpp"
#include "toeptik/tanint.hpp"

namespace toeptik {

struct SolverConfig {
  std::size_t n_lim = 256;
  double pivot_threshold = 1e-8;
  bool paired = true;
  bool force_even = true;
  std::optional<FillPolicy> fill;
  bool verify = true;  // compute the normal-equation residual with fast matvecs
};

struct SolveReport {
  CVector x_hat;
  TanIntDiagnostics diagnostics;
  double wall_time = 0.0;  // seconds, assembly through extraction
  Variant variant = Variant::General;
  double relative_residual = -1.0;  // ||(G_T+G_L)x - rhs|| / ||rhs||, -1 when not verified
  std::size_t N = 0;
  std::size_t extension = 0;
  FillPolicy fill = FillPolicy::Zero;
  TauState final_state;
};

/// Everything a solve produced, for invariant checks.
struct SolveDetail {
  AssembledSystem system;
  TanIntResult construction;
  SolveReport report;
};

SolveReport solve_tikhonov(const ProblemSpec& problem, const SolverConfig& cfg = {});
SolveDetail solve_tikhonov_detailed(const ProblemSpec& problem, const SolverConfig& cfg = {});

/// (G_T + G_L) materialized densely and solved by partially pivoted LU.
CVector dense_oracle(const ProblemSpec& problem, std::size_t cap = 2048);
DenseMatrix dense_normal_matrix(const ProblemSpec& problem);

/// x -> (G_T + G_L) x through circulant embeddings of a shared length.
///
/// Per application: general 6 transforms (x, Tx, Lx, T^H Tx + L^H Lx share
/// spectra), l2 4, gramian 4. Generator spectra are computed once.
class NormalOperator {
 public:
  explicit NormalOperator(const ProblemSpec& problem);

  std::size_t n() const { return n_; }
  std::size_t transforms_per_apply() const;
  CVector apply(std::span<const cplx> x) const;

 private:
  Variant variant_;
  std::size_t n_ = 0;
  double beta_sq_ = 0.0;
  ToeplitzOperator first_;   // T (general, l2) or G (gramian)
  ToeplitzOperator second_;  // L (general, gramian)
};

CVector apply_normal_operator(const ProblemSpec& problem, std::span<const cplx> x);

struct CGConfig {
  std::size_t max_iterations = 1000;
  std::optional<double> time_budget;  // seconds, including operator setup
  double tolerance = 1e-12;           // on ||r|| / ||rhs||
};

struct CGResult {
  CVector x;
  std::size_t iterations = 0;  // completed iterations only
  bool converged = false;
  double relative_residual = 1.0;
  double elapsed = 0.0;
};

/// Unpreconditioned conjugate gradients on (G_T + G_L) x = rhs from x = 0.
CGResult cg_solve(const ProblemSpec& problem, const CGConfig& cfg);

}  // namespace toeptik
