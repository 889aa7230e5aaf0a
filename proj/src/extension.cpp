#include "toeptik/extension.hpp"

#include <algorithm>

#include "toeptik/fft.hpp"
#include "toeptik/poly.hpp"

namespace toeptik {

const char* fill_name(FillPolicy f) { return f == FillPolicy::Zero ? "zero" : "echo"; }

FillPolicy parse_fill(const std::string& name) {
  if (name == "zero") return FillPolicy::Zero;
  if (name == "echo") return FillPolicy::Echo;
  throw ShapeError("unknown fill policy '" + name + "' (expected zero or echo)");
}

CVector fill_arbitrary_entries(const ToeplitzSpec& spec, std::size_t k, FillPolicy policy) {
  spec.validate();
  const std::size_t base = spec.gen.size();
  CVector ext(base + k, cplx{});
  std::copy(spec.gen.begin(), spec.gen.end(), ext.begin());
  if (policy == FillPolicy::Echo)
    for (std::size_t i = base; i < base + k; ++i) ext[i] = spec.gen[i % base];
  return ext;
}

CVector circulant_first_column(const ToeplitzSpec& spec, std::size_t N, FillPolicy policy) {
  spec.validate();
  const std::size_t base = spec.rows + spec.cols - 1;
  if (N < base) throw ShapeError("circulant size smaller than rows + cols - 1");
  const CVector ext = fill_arbitrary_entries(spec, N - base, policy);
  CVector c(N);
  const long n = static_cast<long>(spec.cols);
  const long NN = static_cast<long>(N);
  // ext[i] is a_{i-(n-1)}; entries past a_{m-1} wrap onto the free positions.
  for (long i = 0; i < NN; ++i) {
    const long d = i - (n - 1);
    c[static_cast<std::size_t>(((d % NN) + NN) % NN)] = ext[static_cast<std::size_t>(i)];
  }
  return c;
}

SpectralBlock circulant_spectrum(const ToeplitzSpec& spec, std::size_t k, FillPolicy policy) {
  const std::size_t N = spec.rows + spec.cols + k - 1;
  SpectralBlock s{circulant_first_column(spec, N, policy)};
  transform_forward(s.values);
  return s;
}

std::size_t opt_extend(std::size_t N_tilde, std::size_t N_lim, bool paired, std::size_t rows, bool force_even) {
  if (N_tilde == 0) N_tilde = 1;
  const std::size_t limit = paired ? N_lim / 2 : N_lim;
  auto round_even = [force_even](std::size_t m) { return force_even ? m + (m & 1u) : m; };
  std::size_t M = N_tilde;
  std::size_t scale = 1;  // 2^p
  while (rows * round_even(M) > limit && M > 1) {
    scale *= 2;
    M = (M + 1) / 2;
  }
  std::size_t N = scale * round_even(M);
  if (N < 2) N = 2;
  return N - N_tilde;
}

CVector normal_rhs(const ProblemSpec& problem) {
  if (!problem.y.empty()) return problem.y;
  return toeplitz_adjoint_matvec(problem.T, problem.b);
}

namespace {

FillPolicy resolve_fill(const AssemblyConfig& cfg, std::size_t extension) {
  if (cfg.fill) return *cfg.fill;
  return extension <= 1 ? FillPolicy::Zero : FillPolicy::Echo;
}

std::size_t choose_size(std::size_t base, std::size_t rows, const AssemblyConfig& cfg) {
  return base + opt_extend(base, cfg.n_lim, cfg.paired, rows, cfg.force_even);
}

CVector scaled_unit_column(std::size_t N, std::size_t pos, cplx value) {
  CVector c(N, cplx{});
  c[pos % N] = value;
  return c;
}

CVector negated(CVector c) {
  for (auto& v : c) v = -v;
  return c;
}

// One partial-circulant block: `column` is the first column of the size-N
// circulant whose leading columns form the block.
struct Block {
  std::size_t row;
  std::size_t slot;
  CVector column;
};

AssembledSystem finish(AssembledSystem sys, std::vector<Block> blocks) {
  sys.constant_slot = sys.p - 1;
  sys.solution_slot = 0;
  sys.tau.resize(sys.p);
  for (std::size_t i = 0; i < sys.p; ++i) sys.tau[i] = sys.degree_bounds[i] - 1;

  sys.spectra.assign(sys.block_rows, std::vector<CVector>(sys.p));
  for (auto& b : blocks) {
    transform_forward(b.column);
    sys.spectra[b.row][b.slot] = std::move(b.column);
  }
  sys.conditions.reserve(sys.block_rows * sys.N);
  for (std::size_t r = 0; r < sys.block_rows; ++r) {
    for (std::size_t k = 0; k < sys.N; ++k) {
      InterpolationCondition cond;
      cond.node = unit_root(sys.N, k);
      cond.weights.assign(sys.p, cplx{});
      for (std::size_t s = 0; s < sys.p; ++s)
        if (!sys.spectra[r][s].empty()) cond.weights[s] = sys.spectra[r][s][k];
      cond.row_tag = r;
      cond.index = k;
      sys.conditions.push_back(std::move(cond));
    }
  }
  return sys;
}

}  // namespace

std::size_t AssembledSystem::unknown_count() const {
  std::size_t total = 0;
  for (long b : degree_bounds) total += static_cast<std::size_t>(std::max(b, 0L));
  return total;
}

DenseMatrix AssembledSystem::dense_extended_matrix() const {
  const std::size_t cols = unknown_count();
  DenseMatrix C = DenseMatrix::Zero(static_cast<Eigen::Index>(block_rows * N), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < block_rows; ++r) {
    std::size_t col_offset = 0;
    for (std::size_t s = 0; s < p; ++s) {
      const auto width = static_cast<std::size_t>(std::max(degree_bounds[s], 0L));
      if (!spectra[r][s].empty()) {
        CVector c = spectra[r][s];
        transform_inverse(c);
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < width; ++j)
            C(static_cast<Eigen::Index>(r * N + i), static_cast<Eigen::Index>(col_offset + j)) = c[(i + N - j % N) % N];
      }
      col_offset += width;
    }
  }
  return C;
}

AssembledSystem assemble_general(const ProblemSpec& problem, const AssemblyConfig& cfg) {
  if (problem.variant != Variant::General) throw ShapeError("assemble_general needs a General problem");
  problem.validate();
  const std::size_t m = problem.T.rows;
  const std::size_t n = problem.T.cols;
  const std::size_t pl = problem.L.rows;
  const std::size_t base = n + std::max(m, pl) - 1;
  const std::size_t N = choose_size(base, 3, cfg);

  AssembledSystem sys;
  sys.variant = Variant::General;
  sys.N = N;
  sys.p = 7;
  sys.block_rows = 3;
  sys.n = n;
  sys.base_size = base;
  sys.extension = N - base;
  sys.fill = resolve_fill(cfg, sys.extension);
  // slots: x, sigma1 = Tx, sigma2 = Lx, gamma1, gamma2, gamma3, 1
  sys.degree_bounds = {static_cast<long>(n),     static_cast<long>(m),     static_cast<long>(pl),
                       static_cast<long>(N - n), static_cast<long>(N - m), static_cast<long>(N - pl), 1};

  CVector rhs_col(N, cplx{});
  const CVector rhs = normal_rhs(problem);
  for (std::size_t i = 0; i < n; ++i) rhs_col[i] = -rhs[i];

  std::vector<Block> blocks;
  blocks.push_back({0, 1, circulant_first_column(adjoint(problem.T), N, sys.fill)});
  blocks.push_back({0, 2, circulant_first_column(adjoint(problem.L), N, sys.fill)});
  blocks.push_back({0, 3, scaled_unit_column(N, n, 1.0)});
  blocks.push_back({0, 6, std::move(rhs_col)});
  blocks.push_back({1, 0, negated(circulant_first_column(problem.T, N, sys.fill))});
  blocks.push_back({1, 1, scaled_unit_column(N, 0, 1.0)});
  blocks.push_back({1, 4, scaled_unit_column(N, m, 1.0)});
  blocks.push_back({2, 0, negated(circulant_first_column(problem.L, N, sys.fill))});
  blocks.push_back({2, 2, scaled_unit_column(N, 0, 1.0)});
  blocks.push_back({2, 5, scaled_unit_column(N, pl, 1.0)});
  return finish(std::move(sys), std::move(blocks));
}

AssembledSystem assemble_l2(const ProblemSpec& problem, const AssemblyConfig& cfg) {
  if (problem.variant != Variant::L2Penalty) throw ShapeError("assemble_l2 needs an L2Penalty problem");
  problem.validate();
  const std::size_t m = problem.T.rows;
  const std::size_t n = problem.T.cols;
  const std::size_t base = m + n - 1;
  const std::size_t N = choose_size(base, 2, cfg);

  AssembledSystem sys;
  sys.variant = Variant::L2Penalty;
  sys.N = N;
  sys.p = 5;
  sys.block_rows = 2;
  sys.n = n;
  sys.base_size = base;
  sys.extension = N - base;
  sys.fill = resolve_fill(cfg, sys.extension);
  // slots: x, sigma1 = Tx, gamma1, gamma2, 1
  sys.degree_bounds = {static_cast<long>(n), static_cast<long>(m), static_cast<long>(N - n),
                       static_cast<long>(N - m), 1};

  CVector rhs_col(N, cplx{});
  const CVector rhs = normal_rhs(problem);
  for (std::size_t i = 0; i < n; ++i) rhs_col[i] = -rhs[i];

  std::vector<Block> blocks;
  blocks.push_back({0, 0, scaled_unit_column(N, 0, problem.beta_sq())});
  blocks.push_back({0, 1, circulant_first_column(adjoint(problem.T), N, sys.fill)});
  blocks.push_back({0, 2, scaled_unit_column(N, n, 1.0)});
  blocks.push_back({0, 4, std::move(rhs_col)});
  blocks.push_back({1, 0, negated(circulant_first_column(problem.T, N, sys.fill))});
  blocks.push_back({1, 1, scaled_unit_column(N, 0, 1.0)});
  blocks.push_back({1, 3, scaled_unit_column(N, m, 1.0)});
  return finish(std::move(sys), std::move(blocks));
}

AssembledSystem assemble_gramian(const ProblemSpec& problem, const AssemblyConfig& cfg) {
  if (problem.variant != Variant::ToeplitzGramian) throw ShapeError("assemble_gramian needs a ToeplitzGramian problem");
  problem.validate();
  const std::size_t n = problem.G.order;
  const std::size_t pl = problem.L.rows;
  const std::size_t base = n + std::max(n, pl) - 1;
  const std::size_t N = choose_size(base, 2, cfg);

  AssembledSystem sys;
  sys.variant = Variant::ToeplitzGramian;
  sys.N = N;
  sys.p = 5;
  sys.block_rows = 2;
  sys.n = n;
  sys.base_size = base;
  sys.extension = N - base;
  sys.fill = resolve_fill(cfg, sys.extension);
  // slots: x, sigma = Lx, gamma1, gamma2, 1
  sys.degree_bounds = {static_cast<long>(n), static_cast<long>(pl), static_cast<long>(N - n),
                       static_cast<long>(N - pl), 1};

  CVector rhs_col(N, cplx{});
  for (std::size_t i = 0; i < n; ++i) rhs_col[i] = -problem.y[i];

  std::vector<Block> blocks;
  blocks.push_back({0, 0, circulant_first_column(problem.G.as_toeplitz(), N, sys.fill)});
  blocks.push_back({0, 1, circulant_first_column(adjoint(problem.L), N, sys.fill)});
  blocks.push_back({0, 2, scaled_unit_column(N, n, 1.0)});
  blocks.push_back({0, 4, std::move(rhs_col)});
  blocks.push_back({1, 0, negated(circulant_first_column(problem.L, N, sys.fill))});
  blocks.push_back({1, 1, scaled_unit_column(N, 0, 1.0)});
  blocks.push_back({1, 3, scaled_unit_column(N, pl, 1.0)});
  return finish(std::move(sys), std::move(blocks));
}

AssembledSystem assemble(const ProblemSpec& problem, const AssemblyConfig& cfg) {
  switch (problem.variant) {
    case Variant::General: return assemble_general(problem, cfg);
    case Variant::L2Penalty: return assemble_l2(problem, cfg);
    case Variant::ToeplitzGramian: return assemble_gramian(problem, cfg);
  }
  throw ShapeError("unknown variant");
}

}  // namespace toeptik
