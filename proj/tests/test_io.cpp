#include <doctest.h>

#include "support.hpp"
#include "toeptik/io.hpp"

using namespace toeptik;
using namespace testing;

TEST_CASE("matrix json round trip") {
  auto g = rng(71);
  const ToeplitzSpec s = random_toeplitz(g, 3, 4);
  const Json j = toeplitz_to_json(s);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 4);
  CHECK(j["gen_re"].size() == 6);
  const ToeplitzSpec back = toeplitz_from_json(Json::parse(j.dump()));
  CHECK(back.gen == s.gen);

  CHECK_THROWS_AS(toeplitz_from_json(Json::parse(R"({"rows":2,"cols":2,"gen_re":[1,2]})")), ShapeError);
  CHECK_THROWS_AS(toeplitz_from_json(Json::parse(R"({"rows":2})")), ShapeError);
  const ToeplitzSpec real_only = toeplitz_from_json(Json::parse(R"({"rows":1,"cols":2,"gen_re":[1,2]})"));
  CHECK(real_only.gen[1] == cplx(2.0));
}

TEST_CASE("vector json") {
  const CVector v{cplx(1.0, -1.0), 2.5};
  CHECK(vector_from_json(vector_to_json(v)) == v);
  CHECK(vector_from_json(Json::parse("[1, 2, 3]")) == CVector{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"({"re":[1],"im":[1,2]})")), ShapeError);
}

TEST_CASE("reports and csv") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  const std::vector<AccuracyRow> rows{{Variant::L2Penalty, 512, 1.5e-12, 0}};
  CHECK(accuracy_csv(rows) == "variant,n,max_err\nl2,512,1.5000000000000001e-12\n");
  ComplexityReport c;
  c.rows.push_back({Variant::General, 512, 2046, 0.5, 0.25});
  CHECK(complexity_csv(c) == "variant,n,params,mean_s,median_s\ngeneral,512,2046,0.5,0.25\n");
  const std::vector<CgEquivalenceRow> cg{{Variant::ToeplitzGramian, 1024, 12.5, 1e-3, 1e-12}};
  CHECK(cg_equivalence_csv(cg).starts_with("variant,n,mean_iters,cg_max_err,direct_max_err\ngramian,1024,12.5,"));

  const ProblemSpec I = ProblemSpec::general(ToeplitzSpec::identity(2), ToeplitzSpec::identity(2), CVector{2.0, 4.0});
  const Json r = report_to_json(solve_tikhonov(I));
  CHECK(r["variant"] == "general");
  CHECK(r["x_hat"]["re"].size() == 2);
  for (const char* key : {"conditions_total", "difficult_points", "recursion_depth", "max_column_scale"})
    CHECK(r["diagnostics"].contains(key));
}
