#include <doctest.h>

#include "support.hpp"
#include "toeptik/fft.hpp"

using namespace toeptik;
using namespace testing;

namespace {

// x block of the null vector of the dense extended system, constant slot set to 1.
CVector null_space_solution(const AssembledSystem& sys) {
  const DenseMatrix C = sys.dense_extended_matrix();
  const Eigen::Index k = C.cols() - 1;
  const DenseMatrix C1 = C.leftCols(k);
  const Eigen::VectorXcd z = C1.fullPivLu().solve(Eigen::VectorXcd(-C.col(k)));
  return to_vector(z.head(static_cast<Eigen::Index>(sys.n)));
}

}  // namespace

TEST_CASE("circulant spectra") {
  const SpectralBlock one = circulant_spectrum(ToeplitzSpec{1, 1, {1.0}}, 1, FillPolicy::Zero);
  REQUIRE(one.values.size() == 2);
  CHECK(std::abs(one.values[0] - 1.0) < 1e-15);
  CHECK(std::abs(one.values[1] - 1.0) < 1e-15);

  const SpectralBlock id = circulant_spectrum(ToeplitzSpec::identity(5), 1, FillPolicy::Zero);
  CHECK(id.values.size() == 10);
  for (const auto& v : id.values) CHECK(std::abs(v - 1.0) < 1e-15);

  // The 1-circulant of a 3x3 reproduces T in its top-left corner and T-bar below.
  auto g = rng(21);
  const ToeplitzSpec T = random_toeplitz(g, 3, 3);
  CVector c = circulant_spectrum(T, 1, FillPolicy::Zero).values;
  transform_inverse(c);
  const std::size_t N = c.size();
  DenseMatrix C(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) C(i, j) = c[(i + N - j) % N];
  CHECK((C.topLeftCorner(3, 3) - materialize(T)).cwiseAbs().maxCoeff() < 1e-13);
  // Rows 3..5 of the first three columns hold the wrapped generator.
  for (std::size_t i = 3; i < N; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const long d = long(i) - long(j);
      const cplx expected = d <= 2 ? T.coeff(d) : (d - long(N) >= -2 ? T.coeff(d - long(N)) : cplx{});
      CHECK(std::abs(C(i, j) - expected) < 1e-13);
    }
}

TEST_CASE("arbitrary entry filling") {
  const ToeplitzSpec s{2, 2, {1.0, 2.0, 3.0}};
  for (std::size_t k : {0u, 1u}) {
    const CVector e = fill_arbitrary_entries(s, k, FillPolicy::Zero);
    for (std::size_t i = 3; i < e.size(); ++i) CHECK(e[i] == cplx{});
  }
  const CVector echo = fill_arbitrary_entries(s, 2, FillPolicy::Echo);
  REQUIRE(echo.size() == 5);
  CHECK(echo[3] == cplx(1.0));
  CHECK(echo[4] == cplx(2.0));

  auto g = rng(22);
  const ToeplitzSpec r = random_toeplitz(g, 4, 6);
  const CVector e5 = fill_arbitrary_entries(r, 5, FillPolicy::Echo);
  for (std::size_t i = r.gen.size(); i < e5.size(); ++i)
    CHECK(std::find(r.gen.begin(), r.gen.end(), e5[i]) != r.gen.end());
  CHECK(parse_fill("echo") == FillPolicy::Echo);
  CHECK_THROWS_AS(parse_fill("random"), ShapeError);
}

TEST_CASE("extension size routine") {
  CHECK(opt_extend(1000, 256, false, 3, false) == 8);
  CHECK(opt_extend(128, 256, false, 3) == 0);
  CHECK(opt_extend(48, 256, false, 3) == 0);
  CHECK(opt_extend(1, 256, true, 3) >= 1);

  for (std::size_t lim : {256u, 512u})
    for (bool paired : {false, true})
      for (std::size_t Nt = 2; Nt <= 5000; Nt += 7) {
        const std::size_t N = Nt + opt_extend(Nt, lim, paired, 3);
        std::size_t M = N, pow2 = 1;
        while (M % 2 == 0 && 3 * M > (paired ? lim / 2 : lim)) {
          M /= 2;
          pow2 *= 2;
        }
        CHECK(3 * M <= (paired ? lim / 2 : lim));
        CHECK(pow2 * M == N);
        CHECK(N >= Nt);
      }
}

TEST_CASE("assembled systems have the documented shape") {
  auto g = rng(23);
  for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian}) {
    const ProblemSpec P = random_problem(g, v, 11, 13, 9);
    const AssembledSystem sys = assemble(P);
    const std::size_t rows = v == Variant::General ? 3 : 2;
    CHECK(sys.block_rows == rows);
    CHECK(sys.p == (v == Variant::General ? 7u : 5u));
    CHECK(sys.conditions.size() == rows * sys.N);
    long tau_sum = 0;
    for (std::size_t i = 0; i < sys.p; ++i) {
      CHECK(sys.tau[i] == sys.degree_bounds[i] - 1);
      tau_sum += sys.tau[i];
    }
    CHECK(tau_sum == long(rows * sys.N) - long(sys.p - 1));
    CHECK(sys.N >= sys.base_size);
    for (const auto& c : sys.conditions) {
      CHECK(std::abs(std::abs(c.node) - 1.0) < 1e-14);
      CHECK(std::any_of(c.weights.begin(), c.weights.end(), [](cplx w) { return w != cplx{}; }));
    }
  }
}

TEST_CASE("identity blocks have unit spectra") {
  const ProblemSpec P = ProblemSpec::general(ToeplitzSpec::identity(4), ToeplitzSpec::identity(4),
                                             CVector{4.0, 8.0, 12.0, 16.0});
  const AssembledSystem sys = assemble(P);
  for (std::size_t k = 0; k < sys.N; ++k) {
    CHECK(std::abs(sys.spectra[1][1][k] - 1.0) < 1e-15);
    CHECK(std::abs(sys.spectra[2][2][k] - 1.0) < 1e-15);
  }
  const CVector x = null_space_solution(sys);
  CHECK(max_abs_diff(x, CVector{2.0, 4.0, 6.0, 8.0}) < 1e-12);
}

TEST_CASE("scaled identity spectrum in the l2 system") {
  const ProblemSpec P = ProblemSpec::l2(ToeplitzSpec::identity(3), 1.0, CVector{2.0, 4.0, 6.0});
  const AssembledSystem sys = assemble(P);
  for (std::size_t k = 0; k < sys.N; ++k) CHECK(std::abs(sys.spectra[0][0][k] - 1.0) < 1e-15);
  CHECK(max_abs_diff(null_space_solution(sys), CVector{1.0, 2.0, 3.0}) < 1e-12);

  auto g = rng(24);
  const ProblemSpec R = random_problem(g, Variant::L2Penalty, 8);
  const AssembledSystem rs = assemble(R);
  for (std::size_t k = 0; k < rs.N; ++k) CHECK(std::abs(rs.spectra[0][0][k] - std::sqrt(8.0)) < 1e-13);
}

TEST_CASE("gramian unit block alternates sign on a 1-circulant") {
  auto g = rng(25);
  const ProblemSpec P = random_problem(g, Variant::ToeplitzGramian, 4);
  AssemblyConfig cfg;
  cfg.fill = FillPolicy::Zero;
  const AssembledSystem sys = assemble(P, cfg);
  REQUIRE(sys.extension == 1);
  for (std::size_t k = 0; k < sys.N; ++k) CHECK(std::abs(sys.spectra[0][2][k] - (k % 2 ? -1.0 : 1.0)) < 1e-14);

  const ProblemSpec I = ProblemSpec::gramian(HermitianToeplitzSpec{3, {1.0, 0.0, 0.0}}, ToeplitzSpec::identity(3),
                                             CVector{2.0, -4.0, 6.0});
  CHECK(max_abs_diff(null_space_solution(assemble(I)), CVector{1.0, -2.0, 3.0}) < 1e-12);
}

TEST_CASE("extended null space reproduces the Tikhonov solution") {
  auto g = rng(26);
  for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian})
    for (std::size_t n : {1u, 2u, 6u, 8u, 16u, 40u, 64u})
      for (auto fill : {FillPolicy::Zero, FillPolicy::Echo}) {
        const std::size_t m = n + (n % 3), p = n > 2 ? n - 1 : n;
        const ProblemSpec P = random_problem(g, v, n, m, p);
        AssemblyConfig cfg;
        cfg.fill = fill;
        cfg.n_lim = 64;  // forces nonzero extensions on the larger sizes
        const AssembledSystem sys = assemble(P, cfg);
        CAPTURE(variant_name(v));
        CAPTURE(n);
        CHECK(rel_err(null_space_solution(sys), dense_oracle(P)) < 1e-9);
      }
}
