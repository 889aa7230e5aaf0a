#pragma once

#include <limits>
#include <span>
#include <string>
#include <variant>

#include "toeptik/extension.hpp"
#include "toeptik/poly.hpp"

namespace toeptik {

/// Shift vector tau and the bookkept tau-degrees of the working basis columns.
struct TauState {
  std::vector<long> tau;
  std::vector<long> col_degrees;

  /// State of the identity basis: column j has tau-degree -tau_j.
  static TauState initial(std::vector<long> tau);

  long min_degree() const;
  long spread() const;
};

/// tau-degree max_i(deg q_i - tau_i); the zero vector gives -inf.
Degree tau_degree(const VectorPolynomial& q, std::span<const long> tau);

/// weights . q(node) for every condition.
CVector residual(const VectorPolynomial& q, std::span<const InterpolationCondition> conditions);

/// A condition whose pivot weight was too small to process stably.
struct DifficultPoint {
  InterpolationCondition condition;
  std::string reason;
};

struct SinglePointBasis {
  MatrixPolynomial basis;
  std::size_t pivot = 0;
};

/// Elementary basis for one condition: identity, except that the pivot column
/// j has (z - node) on its diagonal and every other column i has
/// -weights_i / weights_j in row j. The pivot is the largest-weight column
/// among those of minimal tau-degree (lowest index on ties).
std::variant<SinglePointBasis, DifficultPoint> single_point_basis(const InterpolationCondition& cond,
                                                                  const TauState& state, double pivot_threshold);

struct SerialResult {
  MatrixPolynomial basis;
  TauState state;
  std::vector<DifficultPoint> deferred;
  double max_column_scale = 1.0;
};

/// Fast-only construction: conditions are absorbed one at a time, with the
/// remaining weights updated incrementally. With defer=false a pivot failure
/// throws NumericalError.
SerialResult serial_tan_int(std::span<const InterpolationCondition> conditions, const TauState& state,
                            double pivot_threshold, bool defer);

struct TanIntConfig {
  std::size_t n_lim = 256;
  double pivot_threshold = 1e-8;
  double cleanup_threshold = 1e-13;
};

struct TanIntDiagnostics {
  std::size_t conditions_total = 0;
  std::size_t difficult_points = 0;
  std::size_t recursion_depth = 0;
  double max_column_scale = 1.0;
};

struct TanIntResult {
  MatrixPolynomial basis;
  TauState state;
  std::vector<DifficultPoint> deferred;  // processed during the final cleanup
  TanIntDiagnostics diagnostics;
};

/// Divide-and-conquer basis construction over the root-of-unity grid of
/// `system`, splitting by paired interleaving until a subproblem has at most
/// n_lim conditions. Difficult points are deferred to one final serial pass.
TanIntResult rec_tan_int(const AssembledSystem& system, const TauState& state, const TanIntConfig& cfg = {});

/// Same construction with no splitting at all.
TanIntResult serial_construct(const AssembledSystem& system, const TauState& state, const TanIntConfig& cfg = {});

/// Largest |weights . B_c(node)| / (||weights||_1 * max coefficient of column c)
/// over all conditions of `system` and all columns c.
double max_condition_residual(const MatrixPolynomial& basis, const AssembledSystem& system);

/// x(z) / constant from the unique column of tau-degree 0.
CVector extract_solution(const MatrixPolynomial& basis, const TauState& state, std::size_t n,
                         std::size_t solution_slot, std::size_t constant_slot);

}  // namespace toeptik
