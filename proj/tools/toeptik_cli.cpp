#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toeptik/bench.hpp"
#include "toeptik/io.hpp"
#include "toeptik/solver.hpp"

using namespace toeptik;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string variant = "general";
  std::size_t n = 64;
  std::size_t m = 0;
  std::size_t p = 0;
  std::optional<double> beta;
  std::string beta_sq;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::vector<std::size_t> sizes{512, 1024, 2048, 4096};
  std::size_t n_lim = 256;
  double pivot_threshold = 1e-8;
  std::string fill;
  std::string out;
  std::string format = "csv";
  std::string input;
  std::string reg_input;
  std::string b_path;
  std::string rhs_path;
  std::size_t signal_length = 1024;
  std::size_t samples = 1024;
  std::size_t components = 3;
  double f_max = 0.02;
  double reg_scale = 1.0;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ExperimentConfig experiment(const Options& o) {
  ExperimentConfig cfg;
  cfg.variant = parse_variant(o.variant);
  cfg.sizes = o.sizes;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.n_lim = o.n_lim;
  cfg.pivot_threshold = o.pivot_threshold;
  if (!o.fill.empty()) cfg.fill = parse_fill(o.fill);
  cfg.validate();
  return cfg;
}

HermitianToeplitzSpec hermitian_from(const ToeplitzSpec& T) {
  if (T.rows != T.cols) throw ShapeError("Gramian input must be square");
  HermitianToeplitzSpec G;
  G.order = T.cols;
  G.gen.resize(T.cols);
  double scale = 0.0;
  for (auto v : T.gen) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < T.cols; ++k) {
    const long d = static_cast<long>(k);
    G.gen[k] = T.coeff(d);
    if (std::abs(T.coeff(-d) - std::conj(T.coeff(d))) > 1e-12 * std::max(scale, 1.0))
      throw ShapeError("Gramian input is not Hermitian");
  }
  G.validate();
  return G;
}

cplx resolve_beta(const Options& o, std::size_t n, cplx fallback) {
  if (o.beta) return {*o.beta, 0.0};
  if (o.beta_sq.empty()) return fallback;
  if (o.beta_sq == "auto") return {std::pow(double(n), 0.25), 0.0};
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(o.beta_sq, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != o.beta_sq.size() || !(value >= 0.0)) throw ShapeError("--beta-sq must be 'auto' or a non-negative number");
  return {std::sqrt(value), 0.0};
}

ProblemSpec load_problem(const Options& o) {
  const Variant variant = parse_variant(o.variant);
  if (o.input.empty()) {
    auto rng = trial_rng(o.seed, Stream::Oracle, variant, o.n, 0);
    ProblemSpec problem = random_problem(rng, variant, o.n, o.m, o.p);
    if (variant == Variant::L2Penalty) problem.beta = resolve_beta(o, o.n, problem.beta);
    problem.validate();
    return problem;
  }

  const ToeplitzSpec A = toeplitz_from_json(read_json_file(o.input));
  auto regularizer = [&](std::size_t n) {
    return o.reg_input.empty() ? ToeplitzSpec::identity(n) : toeplitz_from_json(read_json_file(o.reg_input));
  };
  const CVector b = o.b_path.empty() ? CVector{} : vector_from_json(read_json_file(o.b_path));
  const CVector y = o.rhs_path.empty() ? CVector{} : vector_from_json(read_json_file(o.rhs_path));
  if (b.empty() && y.empty()) throw ShapeError("a right-hand side is required (--b or --rhs)");

  ProblemSpec problem;
  switch (variant) {
    case Variant::General:
      problem = ProblemSpec::general(A, regularizer(A.cols), b);
      break;
    case Variant::L2Penalty:
      problem = ProblemSpec::l2(A, resolve_beta(o, A.cols, {std::pow(double(A.cols), 0.25), 0.0}), b);
      break;
    case Variant::ToeplitzGramian:
      if (y.empty()) throw ShapeError("the gramian variant takes its right-hand side via --rhs");
      problem = ProblemSpec::gramian(hermitian_from(A), regularizer(A.cols), y);
      break;
  }
  if (!y.empty()) problem.y = y;
  problem.validate();
  return problem;
}

int run_solve(const Options& o) {
  SolverConfig cfg;
  cfg.n_lim = o.n_lim;
  cfg.pivot_threshold = o.pivot_threshold;
  if (!o.fill.empty()) cfg.fill = parse_fill(o.fill);
  if (cfg.n_lim < 1) throw ShapeError("nlim must be >= 1");
  if (!(cfg.pivot_threshold > 0.0 && cfg.pivot_threshold < 1.0))
    throw ShapeError("pivot threshold must lie in (0, 1)");
  const SolveReport rep = solve_tikhonov(load_problem(o), cfg);
  if (o.format == "json") {
    emit(o, dump(report_to_json(rep)));
  } else {
    std::ostringstream os;
    os << "index,re,im\n";
    for (std::size_t i = 0; i < rep.x_hat.size(); ++i)
      os << i << ',' << format_real(rep.x_hat[i].real()) << ',' << format_real(rep.x_hat[i].imag()) << '\n';
    emit(o, os.str());
  }
  return kExitOk;
}

int run_complexity_cmd(const Options& o) {
  const auto rep = run_complexity(experiment(o));
  emit(o, o.format == "json" ? dump(complexity_to_json(rep)) : complexity_csv(rep));
  return kExitOk;
}

int run_accuracy_cmd(const Options& o) {
  const auto rows = run_accuracy(experiment(o));
  emit(o, o.format == "json" ? dump(accuracy_to_json(rows)) : accuracy_csv(rows));
  return kExitOk;
}

int run_cg_cmd(const Options& o) {
  const auto rows = run_cg_equivalence(experiment(o));
  emit(o, o.format == "json" ? dump(cg_equivalence_to_json(rows)) : cg_equivalence_csv(rows));
  return kExitOk;
}

int run_nufft_cmd(const Options& o) {
  NufftConfig cfg;
  cfg.n = o.signal_length;
  cfg.samples = o.samples;
  cfg.components = o.components;
  cfg.f_max = o.f_max;
  cfg.regularizer_scale = o.reg_scale;
  cfg.seed = o.seed;
  cfg.n_lim = o.n_lim;
  cfg.pivot_threshold = o.pivot_threshold;
  cfg.validate();
  const auto rep = run_nufft(cfg);
  emit(o, o.format == "json" ? dump(nufft_to_json(rep)) : nufft_csv(rep));
  return kExitOk;
}

void common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--variant", o.variant, "general | l2 | gramian")
      ->check(CLI::IsMember({"general", "l2", "gramian"}));
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--nlim", o.n_lim, "recursion leaf size")->capture_default_str();
  sub->add_option("--pivot-threshold", o.pivot_threshold, "relative pivot threshold")->capture_default_str();
  sub->add_option("--fill", o.fill, "circulant fill policy")->check(CLI::IsMember({"zero", "echo"}));
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

void experiment_flags(CLI::App* sub, Options& o) {
  sub->add_option("--sizes", o.sizes, "comma-separated problem sizes")->delimiter(',');
  sub->add_option("--trials", o.trials, "trials per size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tikhonov-regularized Toeplitz solver by tangential interpolation"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "solve one problem from JSON inputs or a seeded random instance");
  common_flags(solve, o);
  solve->add_option("--input", o.input, "system matrix JSON (T, or the Gramian G for --variant gramian)");
  solve->add_option("--reg-input", o.reg_input, "regularizer L JSON (general and gramian variants)");
  solve->add_option("--b", o.b_path, "observation vector JSON");
  solve->add_option("--rhs", o.rhs_path, "normal-equation right-hand side y JSON");
  solve->add_option("--n", o.n, "random instance: unknowns");
  solve->add_option("--m", o.m, "random instance: rows of T");
  solve->add_option("--p", o.p, "random instance: rows of L");
  auto* beta = solve->add_option("--beta", o.beta, "l2 penalty weight beta");
  solve->add_option("--beta-sq", o.beta_sq, "|beta|^2 value, or 'auto' for sqrt(n)")->excludes(beta);

  auto* complexity = app.add_subcommand("complexity", "timing curve and n log^2 n fit");
  auto* accuracy = app.add_subcommand("accuracy", "maximum entry-wise error against known sources");
  auto* cg = app.add_subcommand("cg-equiv", "CG iterations affordable in the interpolator's time");
  for (auto* sub : {complexity, accuracy, cg}) {
    common_flags(sub, o);
    experiment_flags(sub, o);
  }

  auto* nufft = app.add_subcommand("nufft", "non-uniform Fourier reconstruction demo");
  common_flags(nufft, o);
  nufft->add_option("--n", o.signal_length, "signal length");
  nufft->add_option("--samples", o.samples, "number of non-uniform samples");
  nufft->add_option("--components", o.components, "number of cosine components");
  nufft->add_option("--f-max", o.f_max, "upper edge of the component frequency band");
  nufft->add_option("--reg-scale", o.reg_scale, "multiplier on the second-difference regularizer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (solve->parsed()) return run_solve(o);
    if (complexity->parsed()) return run_complexity_cmd(o);
    if (accuracy->parsed()) return run_accuracy_cmd(o);
    if (cg->parsed()) return run_cg_cmd(o);
    return run_nufft_cmd(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
