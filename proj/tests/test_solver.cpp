#include <doctest.h>

#include "support.hpp"

using namespace toeptik;
using namespace testing;

TEST_CASE("closed-form small problems") {
  const ProblemSpec I = ProblemSpec::general(ToeplitzSpec::identity(4), ToeplitzSpec::identity(4),
                                             CVector{4.0, 8.0, 12.0, 16.0});
  const CVector half{2.0, 4.0, 6.0, 8.0};
  const SolveReport r = solve_tikhonov(I);
  CHECK(r.x_hat.size() == 4);
  CHECK(max_abs_diff(r.x_hat, half) < 1e-12);
  CHECK(r.relative_residual < 1e-12);
  CHECK(max_abs_diff(dense_oracle(I), half) < 1e-14);

  const ProblemSpec one = ProblemSpec::l2(ToeplitzSpec{1, 1, {2.0}}, 1.0, CVector{10.0});
  CHECK(std::abs(solve_tikhonov(one).x_hat[0] - 4.0) < 1e-12);
  CHECK(std::abs(dense_oracle(one)[0] - 4.0) < 1e-14);
}

TEST_CASE("random problems match the dense oracle") {
  auto g = rng(51);
  for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian})
    for (std::size_t n : {1u, 5u, 32u, 70u}) {
      const ProblemSpec P = random_problem(g, v, n);
      const SolveReport r = solve_tikhonov(P);
      CAPTURE(variant_name(v));
      CAPTURE(n);
      CHECK(rel_err(r.x_hat, dense_oracle(P)) < 1e-9);
      CHECK(r.relative_residual < 1e-8);
      CHECK(r.variant == v);
    }
}

TEST_CASE("rectangular blocks") {
  auto g = rng(52);
  for (auto [m, n, p] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
           {30, 20, 10}, {10, 20, 30}, {3, 7, 5}, {7, 1, 1}, {20, 20, 1}}) {
    for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian}) {
      const ProblemSpec P = random_problem(g, v, n, m, p);
      CAPTURE(variant_name(v));
      CAPTURE(m);
      CAPTURE(n);
      CAPTURE(p);
      CHECK(rel_err(solve_tikhonov(P).x_hat, dense_oracle(P)) < 1e-9);
    }
  }
}

TEST_CASE("solutions are deterministic") {
  auto g1 = rng(53), g2 = rng(53);
  const ProblemSpec A = random_problem(g1, Variant::General, 300);
  const ProblemSpec B = random_problem(g2, Variant::General, 300);
  CHECK(solve_tikhonov(A).x_hat == solve_tikhonov(B).x_hat);
}

TEST_CASE("singular systems are reported") {
  const ProblemSpec Z = ProblemSpec::general(ToeplitzSpec{3, 3, CVector(5, cplx{})}, ToeplitzSpec{3, 3, CVector(5, cplx{})},
                                             CVector{1.0, 1.0, 1.0});
  CHECK_THROWS_AS(dense_oracle(Z), NumericalError);
  CHECK_THROWS_AS(solve_tikhonov(Z), NumericalError);
  auto g = rng(54);
  CHECK_THROWS_AS(dense_oracle(random_problem(g, Variant::L2Penalty, 40), 32), ShapeError);
}

TEST_CASE("oracle round trip") {
  auto g = rng(55);
  for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian}) {
    ProblemSpec P = random_problem(g, v, 24);
    const CVector x = complex_normal_vector(g, 24);
    P.y = apply_normal_operator(P, x);
    CHECK(rel_err(dense_oracle(P), x) < 1e-11);
  }
}

TEST_CASE("normal operator") {
  const ProblemSpec I = ProblemSpec::general(ToeplitzSpec::identity(3), ToeplitzSpec::identity(3), CVector(3, 1.0));
  const CVector x{1.0, cplx(0.0, 2.0), -3.0};
  CHECK(max_abs_diff(apply_normal_operator(I, x), CVector{2.0, cplx(0.0, 4.0), -6.0}) < 1e-14);
  CHECK_THROWS_AS(apply_normal_operator(I, CVector{1.0}), ShapeError);

  auto g = rng(56);
  for (Variant v : {Variant::General, Variant::L2Penalty, Variant::ToeplitzGramian}) {
    const ProblemSpec P = random_problem(g, v, 33, 41, 27);
    const CVector z = complex_normal_vector(g, 33);
    const CVector ref = to_vector(dense_normal_matrix(P) * to_eigen(z));
    CHECK(rel_err(apply_normal_operator(P, z), ref) < 1e-12);
  }
  CHECK(NormalOperator(random_problem(g, Variant::General, 4)).transforms_per_apply() == 6);
  CHECK(NormalOperator(random_problem(g, Variant::L2Penalty, 4)).transforms_per_apply() == 4);
  CHECK(NormalOperator(random_problem(g, Variant::ToeplitzGramian, 4)).transforms_per_apply() == 4);
}

TEST_CASE("conjugate gradients") {
  const ProblemSpec I = ProblemSpec::general(ToeplitzSpec::identity(4), ToeplitzSpec::identity(4),
                                             CVector{4.0, 8.0, 12.0, 16.0});
  const CGResult r = cg_solve(I, {});
  CHECK(r.iterations == 1);
  CHECK(r.converged);
  CHECK(max_abs_diff(r.x, CVector{2.0, 4.0, 6.0, 8.0}) < 1e-14);

  auto g = rng(57);
  const ProblemSpec G = random_problem(g, Variant::ToeplitzGramian, 64);
  CGConfig cfg;
  cfg.tolerance = 1e-13;
  const CGResult gr = cg_solve(G, cfg);
  CHECK(gr.converged);
  CHECK(rel_err(gr.x, dense_oracle(G)) < 1e-10);

  const ProblemSpec L = random_problem(g, Variant::L2Penalty, 64);
  cfg.tolerance = 1e-12;
  CHECK(rel_err(cg_solve(L, cfg).x, solve_tikhonov(L).x_hat) < 1e-6);

  CGConfig none;
  none.max_iterations = 0;
  CHECK_THROWS_AS(cg_solve(I, none), ShapeError);
}

TEST_CASE("time-budgeted conjugate gradients") {
  auto g = rng(58);
  const ProblemSpec P = random_problem(g, Variant::General, 512);
  const SolveReport direct = solve_tikhonov(P);
  CGConfig cfg;
  cfg.max_iterations = 1000000;
  cfg.tolerance = 0.0;
  cfg.time_budget = direct.wall_time;
  const CGResult r = cg_solve(P, cfg);
  CHECK(r.iterations >= 1);
  CHECK(r.iterations < cfg.max_iterations);

  // Rerunning with exactly that many iterations reproduces the committed iterate.
  CGConfig fixed;
  fixed.max_iterations = r.iterations;
  fixed.tolerance = 0.0;
  CHECK(cg_solve(P, fixed).x == r.x);
}

TEST_CASE("detailed solves expose the final state") {
  auto g = rng(59);
  const ProblemSpec P = random_problem(g, Variant::General, 100);
  const SolveDetail d = solve_tikhonov_detailed(P);
  CHECK(d.system.conditions.size() == 3 * d.system.N);
  CHECK(d.report.final_state.col_degrees == d.construction.state.col_degrees);
  CHECK(d.report.diagnostics.conditions_total == d.system.conditions.size());
}
