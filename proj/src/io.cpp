#include "dirac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace dirac {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json matrix_to_value(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      row.push_back(json::array({M(r, c).real(), M(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_value(const json& v, const char* name) {
  if (!v.is_array() || v.empty())
    throw InputError(std::string(name) + ": expected a nonempty array of rows");
  const size_t nrows = v.size();
  size_t ncols = 0;
  for (size_t r = 0; r < nrows; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.empty())
      throw InputError(std::string(name) + ": row " + std::to_string(r) +
                       " is not a nonempty array");
    if (r == 0)
      ncols = row.size();
    else if (row.size() != ncols)
      throw InputError(std::string(name) + ": ragged rows");
  }
  Mat M(nrows, ncols);
  for (size_t r = 0; r < nrows; ++r)
    for (size_t c = 0; c < ncols; ++c) {
      const json& e = v[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw InputError(std::string(name) + ": entry (" + std::to_string(r) +
                         "," + std::to_string(c) + ") is not [re, im]");
      M(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return M;
}

json parse(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw InputError("not valid JSON");
  return doc;
}

int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw InputError(std::string("missing integer field \"") + key + "\"");
  return doc[key].get<int>();
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return doc[key];
}

}  // namespace

std::string matrix_to_json(const Mat& M) { return matrix_to_value(M).dump(); }

std::string triple_to_json(const AdmissibleTriple& t) {
  json doc;
  doc["n"] = t.n;
  doc["m1"] = t.sig.m1;
  doc["m2"] = t.sig.m2;
  doc["A"] = matrix_to_value(t.A);
  doc["S0"] = matrix_to_value(t.S0);
  doc["theta1"] = matrix_to_value(t.theta1);
  doc["theta2"] = matrix_to_value(t.theta2);
  return doc.dump(2) + "\n";
}

AdmissibleTriple triple_from_json_text(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw InputError("triple file must be a JSON object");
  const int n = int_field(doc, "n");
  const int m1 = int_field(doc, "m1");
  const int m2 = int_field(doc, "m2");
  const Mat A = matrix_from_value(field(doc, "A"), "A");
  const Mat S0 = matrix_from_value(field(doc, "S0"), "S0");
  const Mat th1 = matrix_from_value(field(doc, "theta1"), "theta1");
  const Mat th2 = matrix_from_value(field(doc, "theta2"), "theta2");
  if (A.rows() != n || th1.cols() != m1 || th2.cols() != m2)
    throw InputError("declared dimensions disagree with the matrices");
  return make_triple(A, S0, th1, th2);
}

std::string realization_to_json(const Realization& r) {
  json doc;
  doc["n"] = r.n;
  doc["m1"] = r.sig.m1;
  doc["m2"] = r.sig.m2;
  doc["A_cal"] = matrix_to_value(r.Acal);
  doc["B"] = matrix_to_value(r.B);
  doc["C_cal"] = matrix_to_value(r.Ccal);
  return doc.dump(2) + "\n";
}

Realization realization_from_json_text(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object())
    throw InputError("realization file must be a JSON object");
  const int n = int_field(doc, "n");
  const int m1 = int_field(doc, "m1");
  const int m2 = int_field(doc, "m2");
  const Mat Acal = matrix_from_value(field(doc, "A_cal"), "A_cal");
  const Mat B = matrix_from_value(field(doc, "B"), "B");
  const Mat Ccal = matrix_from_value(field(doc, "C_cal"), "C_cal");
  if (Acal.rows() != n || B.cols() != m2 || Ccal.rows() != m1)
    throw InputError("declared dimensions disagree with the matrices");
  return make_realization(Acal, B, Ccal);
}

std::string potential_to_json(const std::vector<Mat>& C, const Signature& sig) {
  json doc;
  doc["m1"] = sig.m1;
  doc["m2"] = sig.m2;
  json arr = json::array();
  for (const Mat& Ck : C) arr.push_back(matrix_to_value(Ck));
  doc["C"] = std::move(arr);
  return doc.dump() + "\n";
}

std::pair<std::vector<Mat>, Signature> potential_from_json_text(
    const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw InputError("potential file must be a JSON object");
  Signature sig{int_field(doc, "m1"), int_field(doc, "m2")};
  if (sig.m1 < 1 || sig.m2 < 1) throw InputError("signature blocks must be positive");
  const json& arr = field(doc, "C");
  if (!arr.is_array() || arr.empty())
    throw InputError("\"C\" must be a nonempty array of matrices");
  std::vector<Mat> C;
  C.reserve(arr.size());
  for (size_t k = 0; k < arr.size(); ++k) {
    Mat Ck = matrix_from_value(arr[k], "C entry");
    if (Ck.rows() != sig.m() || Ck.cols() != sig.m())
      throw InputError("potential entry " + std::to_string(k) +
                       " has wrong dimensions");
    C.push_back(std::move(Ck));
  }
  return {std::move(C), sig};
}

std::vector<Complex> grid_from_json_text(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw InputError("grid file must be a JSON object");
  const json& arr = field(doc, "z");
  if (!arr.is_array() || arr.empty())
    throw InputError("\"z\" must be a nonempty array of [re, im] points");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw InputError("grid point is not [re, im]");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

std::string weyl_csv(const std::vector<Complex>& grid,
                     const std::vector<Mat>& values, const Signature& sig) {
  std::ostringstream os;
  os << "z_re,z_im";
  for (int r = 0; r < sig.m1; ++r)
    for (int c = 0; c < sig.m2; ++c)
      os << ",phi_" << r << c << "_re,phi_" << r << c << "_im";
  os << ",norm\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    os << fmt(grid[i].real()) << "," << fmt(grid[i].imag());
    for (int r = 0; r < sig.m1; ++r)
      for (int c = 0; c < sig.m2; ++c)
        os << "," << fmt(values[i](r, c).real()) << ","
           << fmt(values[i](r, c).imag());
    os << "," << fmt(spectral_norm(values[i])) << "\n";
  }
  return os.str();
}

std::string asymptotics_csv(const AsymptoticsReport& rep) {
  std::ostringstream os;
  os << "k,rho_norm,Ck_minus_I_norm,lmin_Rk,lmin_Qk\n";
  for (const AsymptoticsRow& row : rep.rows)
    os << row.k << "," << fmt(row.rho_norm) << "," << fmt(row.c_err) << ","
       << fmt(row.lmin_R) << "," << fmt(row.lmin_Q) << "\n";
  return os.str();
}

namespace {

nlohmann::json matrix_or_null(const Mat& M) {
  if (M.size() == 0) return nullptr;
  return matrix_to_value(M);
}

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string asymptotics_footer_json(const AsymptoticsReport& rep) {
  json doc;
  doc["kappa_R"] = matrix_or_null(rep.kappa_R);
  doc["kappa_Q"] = matrix_or_null(rep.kappa_Q);
  doc["lmin_F"] = finite_or_null(rep.lmin_F);
  doc["epsilon_gap"] = finite_or_null(rep.epsilon_gap);
  doc["q_route_available"] = rep.q_route_available;
  doc["diagonalizable"] = rep.diagonalizable;
  doc["first_k_small_rho"] = rep.first_k_small_rho;
  doc["after_ratio"] = rep.after_ratio;
  doc["r_growth_k"] = rep.r_growth_k;
  doc["q_growth_k"] = rep.q_growth_k;
  return doc.dump(2) + "\n";
}

std::string stability_csv(const StabilityReport& rep) {
  std::ostringstream os;
  os << "delta,sample,accepted,fail_reason,dX,dC_sup,dC_head,dC_tail,"
        "tail_bound,tail_ok\n";
  for (const StabilityRow& row : rep.rows) {
    os << fmt(row.delta) << "," << row.sample << ","
       << (row.accepted ? 1 : 0) << "," << row.fail_reason << ","
       << fmt(row.dX) << "," << fmt(row.dC_sup) << "," << fmt(row.dC_head)
       << "," << fmt(row.dC_tail) << "," << fmt(row.tail_bound) << ","
       << (row.tail_ok ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string stability_summary_json(const StabilityReport& rep) {
  json doc;
  doc["seed"] = rep.seed;
  doc["k_max"] = rep.k_max;
  doc["r_growth_flag"] = rep.r_growth_flag;
  doc["q_growth_flag"] = rep.q_growth_flag;
  doc["growth_k"] = rep.growth_k;
  json per = json::array();
  for (const StabilitySummary& s : rep.summary) {
    json row;
    row["delta"] = s.delta;
    row["rejected"] = s.rejected;
    row["median_dX"] = s.median_dX;
    row["max_dX"] = s.max_dX;
    row["median_dC"] = s.median_dC;
    row["max_dC"] = s.max_dC;
    per.push_back(std::move(row));
  }
  doc["per_delta"] = std::move(per);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace dirac
