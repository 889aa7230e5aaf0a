#include "toeptik/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toeptik/fft.hpp"

namespace toeptik {

Degree Polynomial::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (std::abs(coeffs[i]) > 0.0) return Degree{static_cast<long>(i)};
  return Degree::neg_inf();
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void Polynomial::trim(double rel) {
  const double cut = rel * max_abs();
  while (!coeffs.empty() && std::abs(coeffs.back()) <= cut) coeffs.pop_back();
}

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b) {
  const Degree da = a.degree();
  const Degree db = b.degree();
  if (da.is_neg_inf() || db.is_neg_inf()) return Polynomial{};
  const auto na = static_cast<std::size_t>(da.value()) + 1;
  const auto nb = static_cast<std::size_t>(db.value()) + 1;
  const std::size_t out_len = na + nb - 1;
  Polynomial out;
  if (std::min(na, nb) <= 16) {
    out.coeffs.assign(out_len, cplx{});
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  } else {
    const std::size_t L = smooth_length(out_len);
    CVector fa(L, cplx{}), fb(L, cplx{});
    std::copy_n(a.coeffs.begin(), na, fa.begin());
    std::copy_n(b.coeffs.begin(), nb, fb.begin());
    transform_forward(fa);
    transform_forward(fb);
    for (std::size_t k = 0; k < L; ++k) fa[k] *= fb[k];
    transform_inverse(fa);
    fa.resize(out_len);
    out.coeffs = std::move(fa);
  }
  out.trim();
  return out;
}

CVector vector_poly_eval(const VectorPolynomial& q, cplx sigma) {
  CVector out(q.entries.size());
  for (std::size_t i = 0; i < q.entries.size(); ++i) out[i] = q.entries[i](sigma);
  return out;
}

MatrixPolynomial MatrixPolynomial::identity(std::size_t dim) {
  MatrixPolynomial I(dim);
  for (std::size_t i = 0; i < dim; ++i) I(i, i).coeffs = {cplx{1.0, 0.0}};
  return I;
}

Degree MatrixPolynomial::max_degree() const {
  Degree d = Degree::neg_inf();
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

Eigen::MatrixXcd MatrixPolynomial::eval(cplx z) const {
  Eigen::MatrixXcd M(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) M(r, c) = (*this)(r, c)(z);
  return M;
}

VectorPolynomial MatrixPolynomial::column(std::size_t c) const {
  VectorPolynomial v;
  v.entries.reserve(dim_);
  for (std::size_t r = 0; r < dim_; ++r) v.entries.push_back((*this)(r, c));
  return v;
}

double MatrixPolynomial::column_scale(std::size_t c) const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) m = std::max(m, (*this)(r, c).max_abs());
  return m;
}

void MatrixPolynomial::scale_column(std::size_t c, cplx factor) {
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto& v : (*this)(r, c).coeffs) v *= factor;
}

MatrixPolynomial matpoly_multiply(const MatrixPolynomial& A, const MatrixPolynomial& B) {
  if (A.dim() != B.dim()) throw ShapeError("matrix polynomial dimensions disagree");
  const std::size_t p = A.dim();
  const Degree da = A.max_degree();
  const Degree db = B.max_degree();
  MatrixPolynomial out(p);
  if (da.is_neg_inf() || db.is_neg_inf()) return out;
  const auto out_len = static_cast<std::size_t>(da.value() + db.value()) + 1;
  const std::size_t L = smooth_length(out_len);

  auto spectra = [L, p](const MatrixPolynomial& M) {
    std::vector<CVector> s(p * p);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) {
        const auto& coeffs = M(r, c).coeffs;
        if (M(r, c).degree().is_neg_inf()) continue;
        CVector buf(L, cplx{});
        std::copy_n(coeffs.begin(), std::min(coeffs.size(), L), buf.begin());
        transform_forward(buf);
        s[r * p + c] = std::move(buf);
      }
    return s;
  };
  const auto sa = spectra(A);
  const auto sb = spectra(B);

  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      CVector acc;
      for (std::size_t k = 0; k < p; ++k) {
        const auto& x = sa[r * p + k];
        const auto& y = sb[k * p + c];
        if (x.empty() || y.empty()) continue;
        if (acc.empty()) acc.assign(L, cplx{});
        for (std::size_t t = 0; t < L; ++t) acc[t] += x[t] * y[t];
      }
      if (acc.empty()) continue;
      transform_inverse(acc);
      acc.resize(out_len);
      out(r, c).coeffs = std::move(acc);
      out(r, c).trim();
    }
  }
  return out;
}

cplx unit_root(std::size_t N, std::size_t j) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j % N) / static_cast<double>(N);
  return std::polar(1.0, angle);
}

cplx RootCoset::node(std::size_t k) const { return unit_root(N, offset + stride * k); }

void RootCoset::validate() const {
  if (N == 0 || stride == 0 || N % stride != 0)
    throw ShapeError("node set is not a coset of the N-th roots of unity (stride must divide N)");
}

std::vector<CVector> eval_entries_at_roots(const MatrixPolynomial& P, const RootCoset& nodes) {
  nodes.validate();
  const std::size_t p = P.dim();
  const std::size_t L = nodes.size();
  const std::size_t off = nodes.offset % nodes.N;
  std::size_t max_len = 0;
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) max_len = std::max(max_len, P(r, c).coeffs.size());
  // twist[i] = w_N^(offset * i)
  CVector twist(max_len);
  for (std::size_t i = 0; i < max_len; ++i) twist[i] = unit_root(nodes.N, (off * (i % nodes.N)) % nodes.N);

  std::vector<CVector> out(p * p);
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      const auto& coeffs = P(r, c).coeffs;
      CVector buf(L, cplx{});
      for (std::size_t i = 0; i < coeffs.size(); ++i) buf[i % L] += coeffs[i] * twist[i];
      transform_forward(buf);
      out[r * p + c] = std::move(buf);
    }
  }
  return out;
}

std::vector<Eigen::MatrixXcd> eval_at_roots(const MatrixPolynomial& P, const RootCoset& nodes) {
  const auto entries = eval_entries_at_roots(P, nodes);
  const std::size_t p = P.dim();
  std::vector<Eigen::MatrixXcd> out(nodes.size(), Eigen::MatrixXcd(p, p));
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) out[k](r, c) = entries[r * p + c][k];
  return out;
}

}  // namespace toeptik
