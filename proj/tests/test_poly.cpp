#include <doctest.h>

#include "support.hpp"

using namespace toeptik;
using namespace testing;

namespace {

Polynomial random_poly(std::mt19937_64& g, std::size_t degree) { return {complex_normal_vector(g, degree + 1)}; }

CVector schoolbook(const CVector& a, const CVector& b) {
  CVector c(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

MatrixPolynomial random_matpoly(std::mt19937_64& g, std::size_t p, std::size_t degree) {
  MatrixPolynomial M(p);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) M(r, c) = random_poly(g, degree);
  return M;
}

double matpoly_distance(const MatrixPolynomial& A, const MatrixPolynomial& B) {
  double e = 0.0, s = 0.0;
  for (std::size_t r = 0; r < A.dim(); ++r)
    for (std::size_t c = 0; c < A.dim(); ++c) {
      const auto& a = A(r, c).coeffs;
      const auto& b = B(r, c).coeffs;
      for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const cplx x = i < a.size() ? a[i] : cplx{};
        const cplx y = i < b.size() ? b[i] : cplx{};
        e = std::max(e, std::abs(x - y));
        s = std::max(s, std::abs(y));
      }
    }
  return s > 0.0 ? e / s : e;
}

}  // namespace

TEST_CASE("degree sentinel") {
  CHECK(Polynomial{}.degree().is_neg_inf());
  CHECK(Polynomial{{0.0, 0.0}}.degree().is_neg_inf());
  CHECK(Polynomial{{1.0, 0.0, 2.0, 0.0}}.degree() == Degree(2));
  CHECK(Degree::neg_inf() < Degree(-100));
  CHECK((Degree::neg_inf() - 5).is_neg_inf());
}

TEST_CASE("polynomial products") {
  const Polynomial a{{1.0, 1.0}}, b{{1.0, -1.0}};
  const Polynomial c = poly_multiply(a, b);
  REQUIRE(c.coeffs.size() == 3);
  CHECK(std::abs(c.coeffs[0] - 1.0) < 1e-15);
  CHECK(std::abs(c.coeffs[1]) < 1e-15);
  CHECK(std::abs(c.coeffs[2] + 1.0) < 1e-15);
  CHECK(poly_multiply(a, Polynomial{}).degree().is_neg_inf());

  auto g = rng(11);
  const Polynomial x = random_poly(g, 100), y = random_poly(g, 100);
  const Polynomial xy = poly_multiply(x, y);
  CHECK(xy.degree() == Degree(200));
  CHECK(rel_err(xy.coeffs, schoolbook(x.coeffs, y.coeffs)) < 1e-12);
}

TEST_CASE("ring axioms on random triples") {
  auto g = rng(12);
  for (int t = 0; t < 5; ++t) {
    const Polynomial a = random_poly(g, 20 + t), b = random_poly(g, 40), c = random_poly(g, 7);
    CHECK(rel_err(poly_multiply(a, b).coeffs, poly_multiply(b, a).coeffs) < 1e-11);
    CHECK(rel_err(poly_multiply(poly_multiply(a, b), c).coeffs, poly_multiply(a, poly_multiply(b, c)).coeffs) <
          1e-11);
  }
}

TEST_CASE("vector polynomial evaluation") {
  VectorPolynomial q{{Polynomial{{1.0}}, Polynomial{{2.0}}, Polynomial{{3.0}}}};
  const CVector v = vector_poly_eval(q, cplx(0.3, 0.7));
  CHECK(v == CVector{1.0, 2.0, 3.0});
  VectorPolynomial r{{Polynomial{{0.0, 1.0}}, Polynomial{{1.0, -1.0}}}};
  CHECK(vector_poly_eval(r, 1.0) == CVector{1.0, 0.0});

  auto g = rng(13);
  const Polynomial p = random_poly(g, 30);
  const cplx z = complex_normal(g);
  cplx ref{}, zk{1.0};
  for (const auto& c : p.coeffs) {
    ref += c * zk;
    zk *= z;
  }
  CHECK(std::abs(vector_poly_eval(VectorPolynomial{{p}}, z)[0] - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
}

TEST_CASE("matrix polynomial products") {
  auto g = rng(14);
  const MatrixPolynomial B = random_matpoly(g, 4, 5);
  CHECK(matpoly_distance(matpoly_multiply(MatrixPolynomial::identity(4), B), B) < 1e-14);

  const MatrixPolynomial X = random_matpoly(g, 7, 8), Y = random_matpoly(g, 7, 8);
  MatrixPolynomial ref(7);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 7; ++c) {
      CVector acc(17, cplx{});
      for (std::size_t k = 0; k < 7; ++k) {
        const CVector t = schoolbook(X(r, k).coeffs, Y(k, c).coeffs);
        for (std::size_t i = 0; i < t.size(); ++i) acc[i] += t[i];
      }
      ref(r, c).coeffs = acc;
    }
  CHECK(matpoly_distance(matpoly_multiply(X, Y), ref) < 1e-11);
}

TEST_CASE("evaluation on root cosets") {
  SUBCASE("identity") {
    const auto vals = eval_at_roots(MatrixPolynomial::identity(3), RootCoset{16, 2, 1});
    REQUIRE(vals.size() == 8);
    for (const auto& M : vals) CHECK(M.isApprox(Eigen::MatrixXcd::Identity(3, 3)));
  }
  SUBCASE("z at all roots") {
    MatrixPolynomial Z(1);
    Z(0, 0).coeffs = {0.0, 1.0};
    const auto vals = eval_at_roots(Z, RootCoset{8, 1, 0});
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(vals[k](0, 0) - unit_root(8, k)) < 1e-15);
  }
  SUBCASE("random degree 15 on odd 32nd roots against Horner") {
    auto g = rng(15);
    const MatrixPolynomial P = random_matpoly(g, 3, 15);
    const RootCoset odd{32, 2, 1};
    const auto vals = eval_at_roots(P, odd);
    for (std::size_t k = 0; k < odd.size(); ++k) {
      const Eigen::MatrixXcd ref = P.eval(odd.node(k));
      CHECK((vals[k] - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("degree beyond the coset size folds correctly") {
    auto g = rng(16);
    const MatrixPolynomial P = random_matpoly(g, 2, 40);
    const RootCoset c{64, 8, 3};
    const auto vals = eval_at_roots(P, c);
    for (std::size_t k = 0; k < c.size(); ++k)
      CHECK((vals[k] - P.eval(c.node(k))).cwiseAbs().maxCoeff() < 1e-11);
  }
  SUBCASE("invalid coset") {
    CHECK_THROWS_AS(eval_at_roots(MatrixPolynomial::identity(2), RootCoset{10, 3, 0}), ShapeError);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  auto g = rng(17);
  const MatrixPolynomial A = random_matpoly(g, 5, 12), B = random_matpoly(g, 5, 9);
  const MatrixPolynomial AB = matpoly_multiply(A, B);
  const RootCoset c{64, 4, 1};
  const auto ea = eval_at_roots(A, c), eb = eval_at_roots(B, c), eab = eval_at_roots(AB, c);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Eigen::MatrixXcd prod = ea[k] * eb[k];
    CHECK((eab[k] - prod).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, prod.cwiseAbs().maxCoeff()));
  }
}
