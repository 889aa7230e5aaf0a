#include "toeptik/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace toeptik {
namespace {

std::vector<double> parts(std::span<const cplx> v, bool imag) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = imag ? v[i].imag() : v[i].real();
  return out;
}

}  // namespace

Json toeplitz_to_json(const ToeplitzSpec& spec) {
  Json j;
  j["rows"] = spec.rows;
  j["cols"] = spec.cols;
  j["gen_re"] = parts(spec.gen, false);
  j["gen_im"] = parts(spec.gen, true);
  return j;
}

ToeplitzSpec toeplitz_from_json(const Json& j) {
  try {
    ToeplitzSpec spec;
    spec.rows = j.at("rows").get<std::size_t>();
    spec.cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("gen_re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("gen_im")) im = j.at("gen_im").get<std::vector<double>>();
    if (im.size() != re.size()) throw ShapeError("gen_re and gen_im lengths differ");
    spec.gen.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) spec.gen[i] = {re[i], im[i]};
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw ShapeError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json vector_to_json(std::span<const cplx> v) {
  Json j;
  j["re"] = parts(v, false);
  j["im"] = parts(v, true);
  return j;
}

CVector vector_from_json(const Json& j) {
  try {
    if (j.is_array()) {
      const auto re = j.get<std::vector<double>>();
      return CVector(re.begin(), re.end());
    }
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (im.size() != re.size()) throw ShapeError("re and im lengths differ");
    CVector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    return v;
  } catch (const Json::exception& e) {
    throw ShapeError(std::string("malformed vector JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ShapeError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ShapeError("cannot write " + path);
  out << text;
}

Json diagnostics_to_json(const TanIntDiagnostics& d) {
  Json j;
  j["conditions_total"] = d.conditions_total;
  j["difficult_points"] = d.difficult_points;
  j["recursion_depth"] = d.recursion_depth;
  j["max_column_scale"] = d.max_column_scale;
  return j;
}

Json report_to_json(const SolveReport& r) {
  Json j;
  j["variant"] = variant_name(r.variant);
  j["n"] = r.x_hat.size();
  j["x_hat"] = vector_to_json(r.x_hat);
  j["diagnostics"] = diagnostics_to_json(r.diagnostics);
  j["wall_time"] = r.wall_time;
  j["relative_residual"] = r.relative_residual;
  j["N"] = r.N;
  j["extension"] = r.extension;
  j["fill"] = fill_name(r.fill);
  return j;
}

Json complexity_to_json(const ComplexityReport& r) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"variant", variant_name(row.variant)},
                         {"n", row.n},
                         {"params", row.params},
                         {"mean_s", row.mean_s},
                         {"median_s", row.median_s}});
  j["fit"] = {{"c1", r.fit.c1}, {"c2", r.fit.c2}, {"r_squared", r.fit.r_squared}};
  return j;
}

Json accuracy_to_json(std::span<const AccuracyRow> rows) {
  Json j = Json::array();
  for (const auto& row : rows)
    j.push_back({{"variant", variant_name(row.variant)},
                 {"n", row.n},
                 {"max_err", row.max_err},
                 {"difficult_points", row.difficult_points}});
  return j;
}

Json cg_equivalence_to_json(std::span<const CgEquivalenceRow> rows) {
  Json j = Json::array();
  for (const auto& row : rows)
    j.push_back({{"variant", variant_name(row.variant)},
                 {"n", row.n},
                 {"mean_iters", row.mean_iters},
                 {"cg_max_err", row.cg_max_err},
                 {"direct_max_err", row.direct_max_err}});
  return j;
}

Json nufft_to_json(const NufftReport& r) {
  Json j;
  j["interp_residual_norm"] = r.interp_residual_norm;
  j["cg_residual_norm"] = r.cg_residual_norm;
  j["interp_rel_error"] = r.interp_rel_error;
  j["cg_rel_error"] = r.cg_rel_error;
  j["interp_time"] = r.interp_time;
  j["cg_iterations"] = r.cg_iterations;
  j["diagnostics"] = diagnostics_to_json(r.diagnostics);
  j["signal"] = vector_to_json(r.signal);
  j["residual_interp"] = vector_to_json(r.residual_interp);
  j["residual_cg"] = vector_to_json(r.residual_cg);
  return j;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complexity_csv(const ComplexityReport& r) {
  std::ostringstream os;
  os << "variant,n,params,mean_s,median_s\n";
  for (const auto& row : r.rows)
    os << variant_name(row.variant) << ',' << row.n << ',' << row.params << ',' << format_real(row.mean_s) << ','
       << format_real(row.median_s) << '\n';
  return os.str();
}

std::string accuracy_csv(std::span<const AccuracyRow> rows) {
  std::ostringstream os;
  os << "variant,n,max_err\n";
  for (const auto& row : rows)
    os << variant_name(row.variant) << ',' << row.n << ',' << format_real(row.max_err) << '\n';
  return os.str();
}

std::string cg_equivalence_csv(std::span<const CgEquivalenceRow> rows) {
  std::ostringstream os;
  os << "variant,n,mean_iters,cg_max_err,direct_max_err\n";
  for (const auto& row : rows)
    os << variant_name(row.variant) << ',' << row.n << ',' << format_real(row.mean_iters) << ','
       << format_real(row.cg_max_err) << ',' << format_real(row.direct_max_err) << '\n';
  return os.str();
}

std::string nufft_csv(const NufftReport& r) {
  std::ostringstream os;
  os << "index,signal_re,signal_im,interp_residual_re,interp_residual_im,cg_residual_re,cg_residual_im\n";
  for (std::size_t i = 0; i < r.signal.size(); ++i)
    os << i << ',' << format_real(r.signal[i].real()) << ',' << format_real(r.signal[i].imag()) << ','
       << format_real(r.residual_interp[i].real()) << ',' << format_real(r.residual_interp[i].imag()) << ','
       << format_real(r.residual_cg[i].real()) << ',' << format_real(r.residual_cg[i].imag()) << '\n';
  return os.str();
}

}  // namespace toeptik
