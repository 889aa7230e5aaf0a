#include "toeptik/solver.hpp"

#include <chrono>
#include <cmath>

#include "toeptik/fft.hpp"

namespace toeptik {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVector padded_spectrum(std::span<const cplx> v, std::size_t L) {
  CVector buf(L, cplx{});
  std::copy(v.begin(), v.end(), buf.begin());
  transform_forward(buf);
  return buf;
}

}  // namespace

NormalOperator::NormalOperator(const ProblemSpec& problem) : variant_(problem.variant), n_(problem.n()) {
  problem.validate();
  switch (variant_) {
    case Variant::General: {
      const std::size_t L = smooth_length(std::max(problem.T.rows, problem.L.rows) + n_ - 1);
      first_ = ToeplitzOperator(problem.T, L);
      second_ = ToeplitzOperator(problem.L, L);
      break;
    }
    case Variant::L2Penalty:
      first_ = ToeplitzOperator(problem.T);
      beta_sq_ = problem.beta_sq();
      break;
    case Variant::ToeplitzGramian: {
      const std::size_t L = smooth_length(std::max(n_, problem.L.rows) + n_ - 1);
      first_ = ToeplitzOperator(problem.G.as_toeplitz(), L);
      second_ = ToeplitzOperator(problem.L, L);
      break;
    }
  }
}

std::size_t NormalOperator::transforms_per_apply() const {
  switch (variant_) {
    case Variant::General: return 6;
    case Variant::L2Penalty: return 4;
    case Variant::ToeplitzGramian: return 4;
  }
  return 0;
}

CVector NormalOperator::apply(std::span<const cplx> x) const {
  if (x.size() != n_) throw ShapeError("normal operator: x length must equal n");
  const std::size_t L = first_.embed_length();
  const CVector& s1 = first_.spectrum();
  const CVector X = padded_spectrum(x, L);
  CVector acc(L, cplx{});

  auto forward_product = [&](const CVector& s, std::size_t rows) {
    CVector v(L);
    for (std::size_t k = 0; k < L; ++k) v[k] = s[k] * X[k];
    transform_inverse(v);
    v.resize(rows);
    return v;
  };

  switch (variant_) {
    case Variant::General: {
      const CVector& s2 = second_.spectrum();
      const CVector TX = padded_spectrum(forward_product(s1, first_.rows()), L);
      const CVector LX = padded_spectrum(forward_product(s2, second_.rows()), L);
      for (std::size_t k = 0; k < L; ++k) acc[k] = std::conj(s1[k]) * TX[k] + std::conj(s2[k]) * LX[k];
      break;
    }
    case Variant::L2Penalty: {
      const CVector TX = padded_spectrum(forward_product(s1, first_.rows()), L);
      for (std::size_t k = 0; k < L; ++k) acc[k] = std::conj(s1[k]) * TX[k];
      break;
    }
    case Variant::ToeplitzGramian: {
      const CVector& s2 = second_.spectrum();
      const CVector LX = padded_spectrum(forward_product(s2, second_.rows()), L);
      for (std::size_t k = 0; k < L; ++k) acc[k] = s1[k] * X[k] + std::conj(s2[k]) * LX[k];
      break;
    }
  }
  transform_inverse(acc);
  acc.resize(n_);
  if (variant_ == Variant::L2Penalty)
    for (std::size_t i = 0; i < n_; ++i) acc[i] += beta_sq_ * x[i];
  return acc;
}

CVector apply_normal_operator(const ProblemSpec& problem, std::span<const cplx> x) {
  return NormalOperator(problem).apply(x);
}

DenseMatrix dense_normal_matrix(const ProblemSpec& problem) {
  problem.validate();
  switch (problem.variant) {
    case Variant::General: return gramian_dense(problem.T) + gramian_dense(problem.L);
    case Variant::L2Penalty: {
      const auto n = static_cast<Eigen::Index>(problem.n());
      return gramian_dense(problem.T) + problem.beta_sq() * DenseMatrix::Identity(n, n);
    }
    case Variant::ToeplitzGramian: return materialize(problem.G) + gramian_dense(problem.L);
  }
  throw ShapeError("unknown variant");
}

CVector dense_oracle(const ProblemSpec& problem, std::size_t cap) {
  if (problem.n() > cap) throw ShapeError("dense oracle size cap exceeded");
  const DenseMatrix A = dense_normal_matrix(problem);
  const CVector rhs = normal_rhs(problem);
  Eigen::PartialPivLU<DenseMatrix> lu(A);
  if (!(lu.rcond() > 1e-15)) throw NumericalError("normal matrix is singular to working precision");
  Eigen::VectorXcd r = Eigen::Map<const Eigen::VectorXcd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXcd x = lu.solve(r);
  return CVector(x.data(), x.data() + x.size());
}

SolveDetail solve_tikhonov_detailed(const ProblemSpec& problem, const SolverConfig& cfg) {
  problem.validate();
  const auto t0 = Clock::now();
  AssemblyConfig acfg;
  acfg.n_lim = cfg.n_lim;
  acfg.paired = cfg.paired;
  acfg.force_even = cfg.force_even;
  acfg.fill = cfg.fill;
  SolveDetail d{assemble(problem, acfg), {}, {}};
  TanIntConfig tcfg;
  tcfg.n_lim = cfg.n_lim;
  tcfg.pivot_threshold = cfg.pivot_threshold;
  d.construction = rec_tan_int(d.system, TauState::initial(d.system.tau), tcfg);

  SolveReport& rep = d.report;
  rep.x_hat = extract_solution(d.construction.basis, d.construction.state, d.system.n, d.system.solution_slot,
                               d.system.constant_slot);
  rep.wall_time = seconds_since(t0);
  rep.diagnostics = d.construction.diagnostics;
  rep.variant = problem.variant;
  rep.N = d.system.N;
  rep.extension = d.system.extension;
  rep.fill = d.system.fill;
  rep.final_state = d.construction.state;
  if (cfg.verify) {
    const CVector rhs = normal_rhs(problem);
    const CVector Ax = apply_normal_operator(problem, rep.x_hat);
    CVector diff(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) diff[i] = Ax[i] - rhs[i];
    const double denom = norm2(rhs);
    rep.relative_residual = denom > 0.0 ? norm2(diff) / denom : norm2(diff);
  }
  return d;
}

SolveReport solve_tikhonov(const ProblemSpec& problem, const SolverConfig& cfg) {
  return solve_tikhonov_detailed(problem, cfg).report;
}

CGResult cg_solve(const ProblemSpec& problem, const CGConfig& cfg) {
  if (cfg.max_iterations < 1) throw ShapeError("CG needs max_iterations >= 1");
  const auto t0 = Clock::now();
  const NormalOperator A(problem);
  const CVector rhs = normal_rhs(problem);
  const std::size_t n = rhs.size();
  const double rhs_norm = norm2(rhs);

  CGResult res;
  res.x.assign(n, cplx{});
  if (rhs_norm == 0.0) {
    res.converged = true;
    res.relative_residual = 0.0;
    return res;
  }
  CVector r = rhs;
  CVector p = r;
  double rs = std::real(dot(r, r));
  CVector x_next(n), r_next(n);
  while (res.iterations < cfg.max_iterations) {
    const CVector Ap = A.apply(p);
    const cplx pAp = dot(p, Ap);
    if (!(std::real(pAp) > 0.0) || !std::isfinite(std::real(pAp))) break;  // breakdown
    const cplx alpha = rs / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      x_next[i] = res.x[i] + alpha * p[i];
      r_next[i] = r[i] - alpha * Ap[i];
    }
    if (cfg.time_budget && seconds_since(t0) > *cfg.time_budget) break;  // partial iteration discarded
    res.x.swap(x_next);
    r.swap(r_next);
    ++res.iterations;
    const double rs_new = std::real(dot(r, r));
    res.relative_residual = std::sqrt(rs_new) / rhs_norm;
    if (res.relative_residual < cfg.tolerance || rs_new == 0.0) {
      res.converged = true;
      break;
    }
    const double beta = rs_new / rs;
    rs = rs_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  res.elapsed = seconds_since(t0);
  return res;
}

}  // namespace toeptik
