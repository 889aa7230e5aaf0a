#pragma once

#include <cmath>
#include <span>

#include "toeptik/bench.hpp"

namespace testing {

using toeptik::cplx;
using toeptik::CVector;

inline double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline double rel_err(std::span<const cplx> a, std::span<const cplx> b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]);
  const double den = norm2(b);
  return den > 0.0 ? std::sqrt(num) / den : std::sqrt(num);
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

inline CVector to_vector(const Eigen::VectorXcd& v) { return CVector(v.data(), v.data() + v.size()); }

inline Eigen::VectorXcd to_eigen(std::span<const cplx> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace testing
