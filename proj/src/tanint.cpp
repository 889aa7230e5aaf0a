#include "toeptik/tanint.hpp"

#include <algorithm>
#include <cmath>

namespace toeptik {

TauState TauState::initial(std::vector<long> tau) {
  TauState s;
  s.col_degrees.resize(tau.size());
  for (std::size_t j = 0; j < tau.size(); ++j) s.col_degrees[j] = -tau[j];
  s.tau = std::move(tau);
  return s;
}

long TauState::min_degree() const { return *std::min_element(col_degrees.begin(), col_degrees.end()); }

long TauState::spread() const {
  auto [lo, hi] = std::minmax_element(col_degrees.begin(), col_degrees.end());
  return *hi - *lo;
}

Degree tau_degree(const VectorPolynomial& q, std::span<const long> tau) {
  if (q.entries.size() != tau.size()) throw ShapeError("tau length must match the vector polynomial length");
  Degree d = Degree::neg_inf();
  for (std::size_t i = 0; i < tau.size(); ++i) d = std::max(d, q.entries[i].degree() - tau[i]);
  return d;
}

CVector residual(const VectorPolynomial& q, std::span<const InterpolationCondition> conditions) {
  CVector out;
  out.reserve(conditions.size());
  for (const auto& c : conditions) {
    if (c.weights.size() != q.entries.size()) throw ShapeError("condition weight length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < c.weights.size(); ++i)
      if (c.weights[i] != cplx{}) acc += c.weights[i] * q.entries[i](c.node);
    out.push_back(acc);
  }
  return out;
}

namespace {

constexpr std::size_t kNoPivot = std::numeric_limits<std::size_t>::max();

// Pivot column, or kNoPivot when the best candidate is below threshold.
std::size_t choose_pivot(std::span<const cplx> phi, std::span<const long> degrees, double threshold) {
  const long dmin = *std::min_element(degrees.begin(), degrees.end());
  double all_max = 0.0;
  for (const auto& v : phi) all_max = std::max(all_max, std::abs(v));
  std::size_t best = kNoPivot;
  double best_abs = -1.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (degrees[j] != dmin) continue;
    const double a = std::abs(phi[j]);
    if (a > best_abs) {
      best_abs = a;
      best = j;
    }
  }
  if (!(all_max > 0.0) || !std::isfinite(all_max) || best_abs < threshold * all_max || best_abs == 0.0)
    return kNoPivot;
  return best;
}

void check_weights(const InterpolationCondition& cond, std::size_t p) {
  if (cond.weights.size() != p) throw ShapeError("condition weight length does not match the basis size");
  if (std::all_of(cond.weights.begin(), cond.weights.end(), [](cplx v) { return v == cplx{}; }))
    throw ShapeError("interpolation condition has all-zero weights");
}

// Column ops of B <- B * S for the elementary basis S of one condition.
void absorb(MatrixPolynomial& B, std::size_t pivot, std::span<const cplx> mu, cplx node) {
  const std::size_t p = B.dim();
  for (std::size_t r = 0; r < p; ++r) {
    const CVector& piv = B(r, pivot).coeffs;
    if (piv.empty()) continue;
    for (std::size_t i = 0; i < p; ++i) {
      if (i == pivot || mu[i] == cplx{}) continue;
      CVector& dst = B(r, i).coeffs;
      if (dst.size() < piv.size()) dst.resize(piv.size(), cplx{});
      for (std::size_t t = 0; t < piv.size(); ++t) dst[t] += mu[i] * piv[t];
    }
  }
  for (std::size_t r = 0; r < p; ++r) {
    CVector& c = B(r, pivot).coeffs;
    if (c.empty()) continue;
    c.push_back(cplx{});
    for (std::size_t t = c.size() - 1; t > 0; --t) c[t] = c[t - 1] - node * c[t];
    c[0] = -node * c[0];
  }
}

// Normalize every column to unit max coefficient; returns the largest scale removed.
double normalize_columns(MatrixPolynomial& B, std::vector<cplx>* factors = nullptr) {
  double largest = 0.0;
  if (factors) factors->assign(B.dim(), cplx{1.0, 0.0});
  for (std::size_t c = 0; c < B.dim(); ++c) {
    const double s = B.column_scale(c);
    if (s == 0.0 || !std::isfinite(s)) continue;
    largest = std::max(largest, s);
    const cplx f{1.0 / s, 0.0};
    B.scale_column(c, f);
    if (factors) (*factors)[c] = f;
  }
  return largest;
}

// Drop coefficients beyond the degree bound implied by the tau bookkeeping:
// entry (r, c) of a basis built from state `in` to state `out` has degree at
// most out_c - in_r.
void truncate_structural(MatrixPolynomial& B, const TauState& in, const TauState& out) {
  for (std::size_t r = 0; r < B.dim(); ++r) {
    for (std::size_t c = 0; c < B.dim(); ++c) {
      const long bound = out.col_degrees[c] - in.col_degrees[r];
      auto& coeffs = B(r, c).coeffs;
      if (bound < 0)
        coeffs.clear();
      else if (coeffs.size() > static_cast<std::size_t>(bound) + 1)
        coeffs.resize(static_cast<std::size_t>(bound) + 1);
    }
  }
}

}  // namespace

std::variant<SinglePointBasis, DifficultPoint> single_point_basis(const InterpolationCondition& cond,
                                                                  const TauState& state, double pivot_threshold) {
  const std::size_t p = state.col_degrees.size();
  check_weights(cond, p);
  const std::size_t j = choose_pivot(cond.weights, state.col_degrees, pivot_threshold);
  if (j == kNoPivot) return DifficultPoint{cond, "pivot-underflow"};
  SinglePointBasis out{MatrixPolynomial::identity(p), j};
  for (std::size_t i = 0; i < p; ++i) {
    if (i == j) continue;
    const cplx mu = -cond.weights[i] / cond.weights[j];
    if (mu != cplx{}) out.basis(j, i).coeffs = {mu};
  }
  out.basis(j, j).coeffs = {-cond.node, cplx{1.0, 0.0}};
  return out;
}

SerialResult serial_tan_int(std::span<const InterpolationCondition> conditions, const TauState& state,
                            double pivot_threshold, bool defer) {
  const std::size_t p = state.col_degrees.size();
  SerialResult res{MatrixPolynomial::identity(p), state, {}, 1.0};
  // Working weights, each condition scaled to unit max (the condition is unchanged by scaling).
  std::vector<CVector> w;
  w.reserve(conditions.size());
  for (const auto& c : conditions) {
    check_weights(c, p);
    double m = 0.0;
    for (const auto& v : c.weights) m = std::max(m, std::abs(v));
    CVector v = c.weights;
    for (auto& x : v) x /= m;
    w.push_back(std::move(v));
  }
  std::vector<std::size_t> active(conditions.size());
  for (std::size_t t = 0; t < active.size(); ++t) active[t] = t;

  CVector mu(p);
  std::vector<cplx> factors;
  while (!active.empty()) {
    // Next condition: the one with the largest admissible pivot.
    const long dmin = res.state.min_degree();
    std::size_t pick = 0;
    double pick_piv = -1.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const CVector& v = w[active[a]];
      double piv = 0.0;
      for (std::size_t i = 0; i < p; ++i)
        if (res.state.col_degrees[i] == dmin) piv = std::max(piv, std::abs(v[i]));
      if (piv > pick_piv) {
        pick_piv = piv;
        pick = a;
      }
    }
    const std::size_t t = active[pick];
    active.erase(active.begin() + static_cast<long>(pick));

    const CVector& phi = w[t];
    const std::size_t j = choose_pivot(phi, res.state.col_degrees, pivot_threshold);
    if (j == kNoPivot) {
      if (!defer)
        throw NumericalError("interpolation condition at node index " + std::to_string(conditions[t].index) +
                             " (block row " + std::to_string(conditions[t].row_tag) +
                             ") cannot be absorbed: the extended system is numerically singular");
      res.deferred.push_back({conditions[t], "pivot-underflow"});
      continue;
    }
    for (std::size_t i = 0; i < p; ++i) mu[i] = i == j ? cplx{} : -phi[i] / phi[j];
    const cplx node = conditions[t].node;
    absorb(res.basis, j, mu, node);
    res.state.col_degrees[j] += 1;
    for (std::size_t u : active) {
      CVector& v = w[u];
      const cplx a = v[j];
      if (a != cplx{})
        for (std::size_t i = 0; i < p; ++i)
          if (i != j) v[i] += a * mu[i];
      v[j] = a * (conditions[u].node - node);
    }
    res.max_column_scale = std::max(res.max_column_scale, normalize_columns(res.basis, &factors));
    for (std::size_t u : active)
      for (std::size_t i = 0; i < p; ++i) w[u][i] *= factors[i];
  }
  return res;
}

namespace {

// Node indices {o + stride*k : o in offsets} of the size-N grid.
struct NodeSet {
  std::size_t stride = 1;
  std::vector<std::size_t> offsets{0};

  bool contains(std::size_t idx) const {
    const std::size_t r = idx % stride;
    return std::find(offsets.begin(), offsets.end(), r) != offsets.end();
  }
};

// Paired interleaving of the sorted node list: positions {4k, 4k+1} versus {4k+2, 4k+3}.
bool paired_split(const NodeSet& s, std::size_t N, NodeSet& first, NodeSet& second) {
  const std::size_t per_offset = N / s.stride;
  if (s.offsets.size() == 1) {
    if (per_offset % 4 != 0 || per_offset < 4) return false;
    const std::size_t o = s.offsets[0];
    first = {4 * s.stride, {o, o + s.stride}};
    second = {4 * s.stride, {o + 2 * s.stride, o + 3 * s.stride}};
    return true;
  }
  if (s.offsets.size() == 2) {
    if (per_offset % 2 != 0 || per_offset < 2) return false;
    first = {2 * s.stride, {s.offsets[0], s.offsets[1]}};
    second = {2 * s.stride, {s.offsets[0] + s.stride, s.offsets[1] + s.stride}};
    return true;
  }
  return false;
}

struct Partial {
  MatrixPolynomial basis;
  TauState state;
  std::vector<DifficultPoint> deferred;
};

struct RecContext {
  std::size_t N = 0;
  TanIntConfig cfg;
  TanIntDiagnostics diag;
};

Partial leaf(std::vector<InterpolationCondition> conds, const TauState& state, RecContext& ctx) {
  std::stable_sort(conds.begin(), conds.end(), [](const auto& a, const auto& b) {
    return a.index != b.index ? a.index < b.index : a.row_tag < b.row_tag;
  });
  SerialResult r = serial_tan_int(conds, state, ctx.cfg.pivot_threshold, true);
  ctx.diag.max_column_scale = std::max(ctx.diag.max_column_scale, r.max_column_scale);
  return {std::move(r.basis), std::move(r.state), std::move(r.deferred)};
}

Partial recurse(std::vector<InterpolationCondition> conds, const NodeSet& nodes, const TauState& state,
                RecContext& ctx, std::size_t depth) {
  ctx.diag.recursion_depth = std::max(ctx.diag.recursion_depth, depth);
  NodeSet left_nodes, right_nodes;
  if (conds.size() <= ctx.cfg.n_lim || !paired_split(nodes, ctx.N, left_nodes, right_nodes))
    return leaf(std::move(conds), state, ctx);

  std::vector<InterpolationCondition> left, right;
  left.reserve(conds.size() / 2);
  right.reserve(conds.size() / 2);
  for (auto& c : conds) (left_nodes.contains(c.index) ? left : right).push_back(std::move(c));
  conds.clear();
  conds.shrink_to_fit();

  Partial L = recurse(std::move(left), left_nodes, state, ctx, depth + 1);

  // Re-express the right half's weights relative to the left basis: phi <- phi * B_L(node).
  const std::size_t p = state.col_degrees.size();
  for (std::size_t off : right_nodes.offsets) {
    const RootCoset coset{ctx.N, right_nodes.stride, off};
    const auto vals = eval_entries_at_roots(L.basis, coset);
    CVector updated(p);
    for (auto& c : right) {
      if (c.index % right_nodes.stride != off) continue;
      const std::size_t k = (c.index - off) / right_nodes.stride;
      for (std::size_t col = 0; col < p; ++col) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < p; ++r)
          if (c.weights[r] != cplx{}) acc += c.weights[r] * vals[r * p + col][k];
        updated[col] = acc;
      }
      c.weights = updated;
    }
  }

  Partial R = recurse(std::move(right), right_nodes, L.state, ctx, depth + 1);

  Partial out;
  out.basis = matpoly_multiply(L.basis, R.basis);
  out.state = std::move(R.state);
  truncate_structural(out.basis, state, out.state);
  ctx.diag.max_column_scale = std::max(ctx.diag.max_column_scale, normalize_columns(out.basis));
  out.deferred = std::move(L.deferred);
  out.deferred.insert(out.deferred.end(), std::make_move_iterator(R.deferred.begin()),
                      std::make_move_iterator(R.deferred.end()));
  return out;
}

TanIntResult construct(const AssembledSystem& system, const TauState& state, const TanIntConfig& cfg) {
  if (state.col_degrees.size() != system.p) throw ShapeError("tau state size does not match the basis size");
  RecContext ctx{system.N, cfg, {}};
  ctx.diag.conditions_total = system.conditions.size();

  Partial top = recurse(system.conditions, NodeSet{}, state, ctx, 0);

  TanIntResult out;
  out.basis = std::move(top.basis);
  out.state = std::move(top.state);
  if (!top.deferred.empty()) {
    // Deferred conditions re-enter with their original weights times the full basis.
    std::vector<InterpolationCondition> cleanup;
    cleanup.reserve(top.deferred.size());
    for (const auto& d : top.deferred) {
      const auto& root = system.conditions[d.condition.row_tag * system.N + d.condition.index];
      InterpolationCondition c = root;
      const Eigen::MatrixXcd Bv = out.basis.eval(root.node);
      for (std::size_t col = 0; col < system.p; ++col) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < system.p; ++r) acc += root.weights[r] * Bv(r, col);
        c.weights[col] = acc;
      }
      cleanup.push_back(std::move(c));
    }
    SerialResult fix = serial_tan_int(cleanup, out.state, cfg.cleanup_threshold, false);
    out.basis = matpoly_multiply(out.basis, fix.basis);
    out.state = std::move(fix.state);
    truncate_structural(out.basis, state, out.state);
    ctx.diag.max_column_scale = std::max(ctx.diag.max_column_scale, normalize_columns(out.basis));
  }
  ctx.diag.difficult_points = top.deferred.size();
  out.deferred = std::move(top.deferred);
  out.diagnostics = ctx.diag;
  return out;
}

}  // namespace

TanIntResult rec_tan_int(const AssembledSystem& system, const TauState& state, const TanIntConfig& cfg) {
  return construct(system, state, cfg);
}

TanIntResult serial_construct(const AssembledSystem& system, const TauState& state, const TanIntConfig& cfg) {
  TanIntConfig c = cfg;
  c.n_lim = std::numeric_limits<std::size_t>::max();
  return construct(system, state, c);
}

double max_condition_residual(const MatrixPolynomial& basis, const AssembledSystem& system) {
  const std::size_t p = basis.dim();
  if (p != system.p) throw ShapeError("basis size does not match the system");
  const auto vals = eval_entries_at_roots(basis, RootCoset{system.N, 1, 0});
  std::vector<double> col_scale(p);
  for (std::size_t c = 0; c < p; ++c) col_scale[c] = basis.column_scale(c);
  double worst = 0.0;
  for (const auto& cond : system.conditions) {
    double wsum = 0.0;
    for (const auto& w : cond.weights) wsum += std::abs(w);
    for (std::size_t c = 0; c < p; ++c) {
      if (col_scale[c] == 0.0) continue;
      cplx acc{0.0, 0.0};
      for (std::size_t r = 0; r < p; ++r) acc += cond.weights[r] * vals[r * p + c][cond.index];
      worst = std::max(worst, std::abs(acc) / (wsum * col_scale[c]));
    }
  }
  return worst;
}

CVector extract_solution(const MatrixPolynomial& basis, const TauState& state, std::size_t n,
                         std::size_t solution_slot, std::size_t constant_slot) {
  const auto it = std::find(state.col_degrees.begin(), state.col_degrees.end(), 0L);
  if (it == state.col_degrees.end()) throw NumericalError("no basis column has tau-degree 0");
  const auto j = static_cast<std::size_t>(it - state.col_degrees.begin());
  const auto& constant = basis(constant_slot, j).coeffs;
  const cplx c0 = constant.empty() ? cplx{} : constant[0];
  const double scale = basis.column_scale(j);
  if (!(std::abs(c0) >= 1e-12 * scale) || scale == 0.0)
    throw NumericalError("constant component of the solution column vanishes: system is singular or ill-conditioned");
  CVector x(n, cplx{});
  const auto& xs = basis(solution_slot, j).coeffs;
  for (std::size_t i = 0; i < std::min(n, xs.size()); ++i) x[i] = xs[i] / c0;
  return x;
}

}  // namespace toeptik
