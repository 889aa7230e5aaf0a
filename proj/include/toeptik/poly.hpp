#pragma once

#include <Eigen/Dense>

#include <compare>
#include <optional>
#include <span>

#include "toeptik/types.hpp"

namespace toeptik {

/// Polynomial degree with a dedicated negative-infinity value for the zero polynomial.
class Degree {
 public:
  constexpr Degree() = default;  // -inf
  constexpr explicit Degree(long value) : value_(value) {}

  static constexpr Degree neg_inf() { return Degree{}; }

  constexpr bool is_neg_inf() const { return !value_.has_value(); }
  long value() const { return value_.value(); }

  /// Shift by an integer; -inf stays -inf.
  constexpr Degree operator-(long shift) const { return is_neg_inf() ? Degree{} : Degree{*value_ - shift}; }
  constexpr Degree operator+(long shift) const { return is_neg_inf() ? Degree{} : Degree{*value_ + shift}; }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return !a.is_neg_inf() <=> !b.is_neg_inf();
    return *a.value_ <=> *b.value_;
  }

 private:
  std::optional<long> value_;
};

/// coeffs[i] multiplies z^i.
struct Polynomial {
  CVector coeffs;

  Degree degree() const;
  cplx operator()(cplx z) const;
  /// Drop trailing coefficients below rel * max|coeff|.
  void trim(double rel = 1e-14);
  double max_abs() const;
};

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b);

struct VectorPolynomial {
  std::vector<Polynomial> entries;
};

CVector vector_poly_eval(const VectorPolynomial& q, cplx sigma);

/// Square p x p matrix of polynomials, row-major.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  explicit MatrixPolynomial(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  static MatrixPolynomial identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  Degree max_degree() const;
  Eigen::MatrixXcd eval(cplx z) const;
  VectorPolynomial column(std::size_t c) const;
  /// Largest coefficient magnitude in column c.
  double column_scale(std::size_t c) const;
  void scale_column(std::size_t c, cplx factor);

 private:
  std::size_t dim_ = 0;
  std::vector<Polynomial> entries_;
};

/// Product by evaluation at enough roots of unity, pointwise p x p products,
/// and an inverse transform.
MatrixPolynomial matpoly_multiply(const MatrixPolynomial& A, const MatrixPolynomial& B);

/// The nodes w^(offset + stride*k), k = 0..N/stride-1, with w = exp(2*pi*i/N).
struct RootCoset {
  std::size_t N = 1;
  std::size_t stride = 1;
  std::size_t offset = 0;

  std::size_t size() const { return N / stride; }
  cplx node(std::size_t k) const;
  void validate() const;
};

/// Values of every entry of P on the coset: result[r*p + c][k] = P(r,c)(node k).
/// Uses one length-N/stride transform per entry after twisting by w^(offset*i).
std::vector<CVector> eval_entries_at_roots(const MatrixPolynomial& P, const RootCoset& nodes);

/// P(node) as dense matrices, in coset order.
std::vector<Eigen::MatrixXcd> eval_at_roots(const MatrixPolynomial& P, const RootCoset& nodes);

/// exp(2*pi*i*j/N), reducing j mod N first.
cplx unit_root(std::size_t N, std::size_t j);

}  // namespace toeptik
