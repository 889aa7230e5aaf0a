#pragma once

#include <Eigen/Dense>

#include <span>

#include "toeptik/types.hpp"

namespace toeptik {

using DenseMatrix = Eigen::MatrixXcd;

/// An m x n Toeplitz matrix T = [a_{i-j}], stored by its generating sequence.
///
/// `gen` holds a_{-(n-1)}, ..., a_{-1}, a_0, a_1, ..., a_{m-1} contiguously,
/// so the coefficient a_d lives at gen[d + n - 1].
struct ToeplitzSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CVector gen;

  cplx coeff(long d) const { return gen[static_cast<std::size_t>(d + static_cast<long>(cols) - 1)]; }

  void validate() const;

  /// First column a_0..a_{m-1} and first row a_0, a_{-1}, ..., a_{-(n-1)}.
  static ToeplitzSpec from_col_row(std::span<const cplx> first_col, std::span<const cplx> first_row);
  static ToeplitzSpec identity(std::size_t n);
  static ToeplitzSpec scaled_identity(std::size_t n, cplx value);
};

/// An n x n Hermitian Toeplitz matrix. `gen[k]` is a_k = G[k][0] (first
/// column); the first row is conj(a_k) since a_{-k} = conj(a_k).
struct HermitianToeplitzSpec {
  std::size_t order = 0;
  CVector gen;

  void validate() const;
  ToeplitzSpec as_toeplitz() const;
};

enum class Variant { General, L2Penalty, ToeplitzGramian };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);

/// A Tikhonov problem  min ||Tx - b||^2 + ||Lx||^2  in one of three structured forms.
///
/// The normal-equation right-hand side is T^H b unless `y` is non-empty, in
/// which case (G_T + G_L) x = y is solved directly. The Gramian variant always
/// uses `y`.
struct ProblemSpec {
  Variant variant = Variant::General;
  ToeplitzSpec T;            // General, L2Penalty
  HermitianToeplitzSpec G;   // ToeplitzGramian
  ToeplitzSpec L;            // General, ToeplitzGramian
  cplx beta{0.0, 0.0};       // L2Penalty: L = beta * I
  CVector b;                 // length rows(T)
  CVector y;                 // length n

  std::size_t n() const;
  double beta_sq() const { return std::norm(beta); }
  void validate() const;

  static ProblemSpec general(ToeplitzSpec T, ToeplitzSpec L, CVector b);
  static ProblemSpec l2(ToeplitzSpec T, cplx beta, CVector b);
  static ProblemSpec gramian(HermitianToeplitzSpec G, ToeplitzSpec L, CVector y);
};

DenseMatrix materialize(const ToeplitzSpec& spec);
DenseMatrix materialize(const HermitianToeplitzSpec& spec);

/// Generating sequence of T^H (reflected and conjugated).
ToeplitzSpec adjoint(const ToeplitzSpec& spec);

CVector toeplitz_matvec(const ToeplitzSpec& spec, std::span<const cplx> x);
CVector toeplitz_adjoint_matvec(const ToeplitzSpec& spec, std::span<const cplx> y);

/// Fast repeated application of a Toeplitz matrix through a fixed circulant
/// embedding. The embedding spectrum is computed once; the adjoint spectrum is
/// its conjugate, so T^H costs no extra generator transform.
class ToeplitzOperator {
 public:
  ToeplitzOperator() = default;
  ToeplitzOperator(const ToeplitzSpec& spec, std::size_t embed_length);
  explicit ToeplitzOperator(const ToeplitzSpec& spec);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t embed_length() const { return spectrum_.size(); }
  const CVector& spectrum() const { return spectrum_; }

  CVector apply(std::span<const cplx> x) const;
  CVector apply_adjoint(std::span<const cplx> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector spectrum_;
};

/// Dense Gramian T^H T.
DenseMatrix gramian_dense(const ToeplitzSpec& spec);

/// Compact Hermitian Toeplitz form of a dense Hermitian matrix; throws
/// NumericalError if any entry deviates from its diagonal's value by more
/// than `tol` (relative to the largest entry).
HermitianToeplitzSpec hermitian_toeplitz_from_dense(const DenseMatrix& G, double tol);

/// T^H T asserted to be Toeplitz.
HermitianToeplitzSpec gramian_generating_sequence(const ToeplitzSpec& spec, double tol);

}  // namespace toeptik
