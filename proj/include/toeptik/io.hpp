#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>

#include "toeptik/bench.hpp"

namespace toeptik {

using Json = nlohmann::ordered_json;

/// {"rows": m, "cols": n, "gen_re": [...], "gen_im": [...]}
Json toeplitz_to_json(const ToeplitzSpec& spec);
ToeplitzSpec toeplitz_from_json(const Json& j);

/// {"re": [...], "im": [...]}; a bare array of reals is accepted on input.
Json vector_to_json(std::span<const cplx> v);
CVector vector_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json diagnostics_to_json(const TanIntDiagnostics& d);
Json report_to_json(const SolveReport& r);
Json complexity_to_json(const ComplexityReport& r);
Json accuracy_to_json(std::span<const AccuracyRow> rows);
Json cg_equivalence_to_json(std::span<const CgEquivalenceRow> rows);
Json nufft_to_json(const NufftReport& r);

/// Real numbers with 17 significant digits.
std::string format_real(double v);

std::string complexity_csv(const ComplexityReport& r);
std::string accuracy_csv(std::span<const AccuracyRow> rows);
std::string cg_equivalence_csv(std::span<const CgEquivalenceRow> rows);
/// index,signal_re,signal_im,interp_residual_re,interp_residual_im,cg_residual_re,cg_residual_im
std::string nufft_csv(const NufftReport& r);

}  // namespace toeptik
