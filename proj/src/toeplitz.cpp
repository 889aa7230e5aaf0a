#include "toeptik/toeplitz.hpp"

#include <algorithm>
#include <cmath>

#include "toeptik/fft.hpp"

namespace toeptik {

void ToeplitzSpec::validate() const {
  if (rows == 0 || cols == 0) throw ShapeError("Toeplitz dimensions must be positive");
  if (gen.size() != rows + cols - 1)
    throw ShapeError("generating sequence length " + std::to_string(gen.size()) + " != rows + cols - 1 = " +
                     std::to_string(rows + cols - 1));
}

ToeplitzSpec ToeplitzSpec::from_col_row(std::span<const cplx> first_col, std::span<const cplx> first_row) {
  if (first_col.empty() || first_row.empty()) throw ShapeError("empty first column or row");
  ToeplitzSpec s;
  s.rows = first_col.size();
  s.cols = first_row.size();
  s.gen.resize(s.rows + s.cols - 1);
  for (std::size_t j = 1; j < s.cols; ++j) s.gen[s.cols - 1 - j] = first_row[j];
  for (std::size_t i = 0; i < s.rows; ++i) s.gen[s.cols - 1 + i] = first_col[i];
  return s;
}

ToeplitzSpec ToeplitzSpec::identity(std::size_t n) { return scaled_identity(n, cplx{1.0, 0.0}); }

ToeplitzSpec ToeplitzSpec::scaled_identity(std::size_t n, cplx value) {
  ToeplitzSpec s{n, n, CVector(2 * n - 1, cplx{})};
  s.gen[n - 1] = value;
  return s;
}

void HermitianToeplitzSpec::validate() const {
  if (order == 0) throw ShapeError("Hermitian Toeplitz order must be positive");
  if (gen.size() != order) throw ShapeError("Hermitian generating sequence length must equal the order");
  if (gen[0].imag() != 0.0) throw ShapeError("main diagonal of a Hermitian Toeplitz matrix must be real");
}

ToeplitzSpec HermitianToeplitzSpec::as_toeplitz() const {
  ToeplitzSpec s{order, order, CVector(2 * order - 1)};
  for (std::size_t k = 0; k < order; ++k) {
    s.gen[order - 1 + k] = gen[k];
    s.gen[order - 1 - k] = std::conj(gen[k]);
  }
  s.gen[order - 1] = cplx{gen[0].real(), 0.0};
  return s;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::General: return "general";
    case Variant::L2Penalty: return "l2";
    case Variant::ToeplitzGramian: return "gramian";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "general") return Variant::General;
  if (name == "l2") return Variant::L2Penalty;
  if (name == "gramian") return Variant::ToeplitzGramian;
  throw ShapeError("unknown variant '" + name + "' (expected general, l2 or gramian)");
}

std::size_t ProblemSpec::n() const {
  return variant == Variant::ToeplitzGramian ? G.order : T.cols;
}

void ProblemSpec::validate() const {
  switch (variant) {
    case Variant::General:
      T.validate();
      L.validate();
      if (L.cols != T.cols) throw ShapeError("T and L must have the same number of columns");
      break;
    case Variant::L2Penalty:
      T.validate();
      break;
    case Variant::ToeplitzGramian:
      G.validate();
      L.validate();
      if (L.cols != G.order) throw ShapeError("L column count must equal the Gramian order");
      if (y.empty()) throw ShapeError("the Gramian variant needs a right-hand side y");
      break;
  }
  if (!y.empty()) {
    if (y.size() != n()) throw ShapeError("right-hand side y must have length n");
  } else if (b.size() != T.rows) {
    throw ShapeError("b length must equal the row count of T");
  }
}

ProblemSpec ProblemSpec::general(ToeplitzSpec T, ToeplitzSpec L, CVector b) {
  ProblemSpec p;
  p.variant = Variant::General;
  p.T = std::move(T);
  p.L = std::move(L);
  p.b = std::move(b);
  return p;
}

ProblemSpec ProblemSpec::l2(ToeplitzSpec T, cplx beta, CVector b) {
  ProblemSpec p;
  p.variant = Variant::L2Penalty;
  p.T = std::move(T);
  p.beta = beta;
  p.b = std::move(b);
  return p;
}

ProblemSpec ProblemSpec::gramian(HermitianToeplitzSpec G, ToeplitzSpec L, CVector y) {
  ProblemSpec p;
  p.variant = Variant::ToeplitzGramian;
  p.G = std::move(G);
  p.L = std::move(L);
  p.y = std::move(y);
  return p;
}

DenseMatrix materialize(const ToeplitzSpec& spec) {
  spec.validate();
  DenseMatrix M(spec.rows, spec.cols);
  for (std::size_t i = 0; i < spec.rows; ++i)
    for (std::size_t j = 0; j < spec.cols; ++j)
      M(i, j) = spec.coeff(static_cast<long>(i) - static_cast<long>(j));
  return M;
}

DenseMatrix materialize(const HermitianToeplitzSpec& spec) {
  spec.validate();
  return materialize(spec.as_toeplitz());
}

ToeplitzSpec adjoint(const ToeplitzSpec& spec) {
  ToeplitzSpec h{spec.cols, spec.rows, CVector(spec.gen.size())};
  // (T^H)_{ij} = conj(a_{j-i}): coefficient d of T^H is conj(a_{-d}).
  std::transform(spec.gen.rbegin(), spec.gen.rend(), h.gen.begin(), [](cplx v) { return std::conj(v); });
  return h;
}

ToeplitzOperator::ToeplitzOperator(const ToeplitzSpec& spec)
    : ToeplitzOperator(spec, smooth_length(spec.rows + spec.cols - 1)) {}

ToeplitzOperator::ToeplitzOperator(const ToeplitzSpec& spec, std::size_t embed_length)
    : rows_(spec.rows), cols_(spec.cols), spectrum_(embed_length, cplx{}) {
  spec.validate();
  if (embed_length < spec.rows + spec.cols - 1) throw ShapeError("embedding length too short for Toeplitz matvec");
  const long L = static_cast<long>(embed_length);
  for (long d = -static_cast<long>(cols_) + 1; d < static_cast<long>(rows_); ++d)
    spectrum_[static_cast<std::size_t>(((d % L) + L) % L)] = spec.coeff(d);
  transform_forward(spectrum_);
}

CVector ToeplitzOperator::apply(std::span<const cplx> x) const {
  if (x.size() != cols_) throw ShapeError("Toeplitz matvec: x length must equal cols");
  CVector buf(spectrum_.size(), cplx{});
  std::copy(x.begin(), x.end(), buf.begin());
  transform_forward(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= spectrum_[k];
  transform_inverse(buf);
  buf.resize(rows_);
  return buf;
}

CVector ToeplitzOperator::apply_adjoint(std::span<const cplx> y) const {
  if (y.size() != rows_) throw ShapeError("Toeplitz adjoint matvec: y length must equal rows");
  CVector buf(spectrum_.size(), cplx{});
  std::copy(y.begin(), y.end(), buf.begin());
  transform_forward(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= std::conj(spectrum_[k]);
  transform_inverse(buf);
  buf.resize(cols_);
  return buf;
}

CVector toeplitz_matvec(const ToeplitzSpec& spec, std::span<const cplx> x) {
  if (x.size() != spec.cols) throw ShapeError("Toeplitz matvec: x length must equal cols");
  return ToeplitzOperator(spec).apply(x);
}

CVector toeplitz_adjoint_matvec(const ToeplitzSpec& spec, std::span<const cplx> y) {
  if (y.size() != spec.rows) throw ShapeError("Toeplitz adjoint matvec: y length must equal rows");
  return ToeplitzOperator(adjoint(spec)).apply(y);
}

DenseMatrix gramian_dense(const ToeplitzSpec& spec) {
  DenseMatrix T = materialize(spec);
  return T.adjoint() * T;
}

HermitianToeplitzSpec hermitian_toeplitz_from_dense(const DenseMatrix& G, double tol) {
  if (G.rows() != G.cols() || G.rows() == 0) throw ShapeError("Gramian must be square and non-empty");
  const auto n = static_cast<std::size_t>(G.rows());
  HermitianToeplitzSpec h{n, CVector(n)};
  for (std::size_t k = 0; k < n; ++k) h.gen[k] = G(static_cast<Eigen::Index>(k), 0);
  h.gen[0] = cplx{h.gen[0].real(), 0.0};
  const double scale = std::max(G.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index r = 0; r < G.rows(); ++r) {
    for (Eigen::Index s = 0; s < G.cols(); ++s) {
      const long d = static_cast<long>(r) - static_cast<long>(s);
      const cplx expected = d >= 0 ? h.gen[static_cast<std::size_t>(d)] : std::conj(h.gen[static_cast<std::size_t>(-d)]);
      if (std::abs(G(r, s) - expected) > tol * scale)
        throw NumericalError("matrix is not Hermitian Toeplitz within tolerance");
    }
  }
  return h;
}

HermitianToeplitzSpec gramian_generating_sequence(const ToeplitzSpec& spec, double tol) {
  return hermitian_toeplitz_from_dense(gramian_dense(spec), tol);
}

}  // namespace toeptik
