#pragma once

#include <optional>

#include "toeptik/toeplitz.hpp"

namespace toeptik {

/// How the free ("arbitrary") entries of a circulant extension are filled.
enum class FillPolicy { Zero, Echo };

const char* fill_name(FillPolicy f);
FillPolicy parse_fill(const std::string& name);

/// Eigenvalues of a circulant completion at the nodes w_k = exp(2*pi*i*k/N).
struct SpectralBlock {
  CVector values;
};

/// A tangential-interpolation condition  weights . p(node) = 0.
struct InterpolationCondition {
  cplx node;
  CVector weights;
  std::size_t row_tag = 0;  // block row that produced it
  std::size_t index = 0;    // node index k, node = w_N^k
};

/// The interpolation form of an extended Tikhonov system.
///
/// Unknown polynomial slot 0 is the solution x, slot p-1 is the constant 1.
/// Conditions are stored block row by block row: conditions[r*N + k].
struct AssembledSystem {
  Variant variant = Variant::General;
  std::size_t N = 0;
  std::size_t p = 0;
  std::size_t block_rows = 0;
  std::size_t n = 0;
  std::size_t base_size = 0;  // N_tilde, the 0-circulant size
  std::size_t extension = 0;  // N - N_tilde
  FillPolicy fill = FillPolicy::Zero;
  std::vector<long> degree_bounds;
  std::vector<long> tau;
  std::vector<InterpolationCondition> conditions;
  std::size_t solution_slot = 0;
  std::size_t constant_slot = 0;

  /// Column layout of the homogeneous extended matrix (sum of degree bounds).
  std::size_t unknown_count() const;
  /// Materialize the (block_rows*N) x unknown_count() extended homogeneous matrix
  /// by inverse-transforming each block's spectrum. For oracle use only.
  DenseMatrix dense_extended_matrix() const;
  /// Per-block circulant spectra, indexed [row][slot]; empty when the block is zero.
  std::vector<std::vector<CVector>> spectra;
};

struct AssemblyConfig {
  std::size_t n_lim = 256;
  bool paired = true;
  bool force_even = true;
  std::optional<FillPolicy> fill;  // default: Zero for extension <= 1, Echo otherwise
};

/// Extended generating sequence of length m+n+k-1: the original sequence
/// followed by k arbitrary entries (zero, or gen[i mod (m+n-1)] for Echo).
CVector fill_arbitrary_entries(const ToeplitzSpec& spec, std::size_t k, FillPolicy policy);

/// First column of the size-N circulant whose leading m x n block is T
/// (c[d mod N] = a_d), with N - (m+n-1) free entries filled per policy.
CVector circulant_first_column(const ToeplitzSpec& spec, std::size_t N, FillPolicy policy);

/// Spectrum of the k-circulant extension, N_k = m+n+k-1.
SpectralBlock circulant_spectrum(const ToeplitzSpec& spec, std::size_t k, FillPolicy policy);

/// Extension size k such that N_tilde + k = 2^p M with rows*M within the
/// leaf limit (N_lim, or N_lim/2 for paired interleaving). With force_even,
/// M is rounded up to an even number while keeping the limit.
std::size_t opt_extend(std::size_t N_tilde, std::size_t N_lim, bool paired, std::size_t rows = 3,
                       bool force_even = true);

AssembledSystem assemble_general(const ProblemSpec& problem, const AssemblyConfig& cfg = {});
AssembledSystem assemble_l2(const ProblemSpec& problem, const AssemblyConfig& cfg = {});
AssembledSystem assemble_gramian(const ProblemSpec& problem, const AssemblyConfig& cfg = {});
AssembledSystem assemble(const ProblemSpec& problem, const AssemblyConfig& cfg = {});

/// The right-hand side of the normal equations, T^H b or y.
CVector normal_rhs(const ProblemSpec& problem);

}  // namespace toeptik
