#ifndef ELOP_IO_HPP
#define ELOP_IO_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "counterexample_search.hpp"
#include "elementary_operator.hpp"
#include "schur_multiplier.hpp"
#include "semidiagonality.hpp"
#include "verification.hpp"

namespace elop {

using json = nlohmann::json;

inline constexpr const char* tool_name = "elop";
inline constexpr const char* tool_version = "1.0.0";

/// %.17g: enough digits to round-trip any double.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Complex numbers and matrices

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const std::vector<cplx>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(to_json(z));
  return a;
}

/// {"rows": m, "cols": n, "re": [[...]], "im": [[...]]}, row-major.
inline json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ri = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

namespace detail {
inline double as_number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(std::string(what) + ": non-finite value");
  return d;
}

inline Index as_dim(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
    throw ParseError(std::string("matrix: \"") + key + "\" must be a non-negative integer");
  return static_cast<Index>(j.at(key).get<long long>());
}

inline void fill_part(const json& rows_json, Index rows, Index cols, CMatrix& m, bool imag) {
  const char* what = imag ? "matrix \"im\"" : "matrix \"re\"";
  if (!rows_json.is_array() || static_cast<Index>(rows_json.size()) != rows)
    throw ParseError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  for (Index i = 0; i < rows; ++i) {
    const auto& row = rows_json[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError(std::string(what) + ": row " + std::to_string(i) + " must have " +
                       std::to_string(cols) + " entries");
    for (Index j = 0; j < cols; ++j) {
      const double v = as_number(row[static_cast<std::size_t>(j)], what);
      if (imag)
        m(i, j).imag(v);
      else
        m(i, j).real(v);
    }
  }
}
} // namespace detail

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  const Index rows = detail::as_dim(j, "rows");
  const Index cols = detail::as_dim(j, "cols");
  if (!j.contains("re")) throw ParseError("matrix: missing \"re\"");
  CMatrix m = CMatrix::Zero(rows, cols);
  detail::fill_part(j.at("re"), rows, cols, m, false);
  if (j.contains("im")) detail::fill_part(j.at("im"), rows, cols, m, true);
  return m;
}

// ---------------------------------------------------------------------------
// Coefficient families: {"terms": [{"A": <matrix>, "B": <matrix>}, ...]},
// "B" defaulting to "A".

inline json family_to_json(const CoefficientFamily& fam) {
  json terms = json::array();
  for (const auto& t : fam.terms())
    terms.push_back({{"A", matrix_to_json(t.a)}, {"B", matrix_to_json(t.b)}});
  return {{"terms", terms}};
}

inline CoefficientFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw ParseError("family: expected {\"terms\": [...]}");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("A")) throw ParseError("family: every term needs \"A\"");
    CMatrix a = matrix_from_json(t.at("A"));
    CMatrix b = t.contains("B") ? matrix_from_json(t.at("B")) : a;
    terms.push_back({std::move(a), std::move(b)});
  }
  return CoefficientFamily(std::move(terms));
}

// ---------------------------------------------------------------------------
// Atom lists: [{"c_re": .., "c_im": .., "x": ..}, ...]

inline std::vector<Atom> atoms_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("atoms: expected an array");
  std::vector<Atom> out;
  for (const auto& a : j) {
    if (!a.is_object() || !a.contains("x")) throw ParseError("atoms: every atom needs \"x\"");
    const double re = a.contains("c_re") ? detail::as_number(a.at("c_re"), "atom c_re") : 0.0;
    const double im = a.contains("c_im") ? detail::as_number(a.at("c_im"), "atom c_im") : 0.0;
    out.push_back({cplx(re, im), detail::as_number(a.at("x"), "atom x")});
  }
  return out;
}

inline json atoms_to_json(const std::vector<Atom>& atoms) {
  json a = json::array();
  for (const auto& at : atoms) a.push_back({{"c_re", at.c.real()}, {"c_im", at.c.imag()}, {"x", at.x}});
  return a;
}

// ---------------------------------------------------------------------------
// Output records

/// {tool, version, seed, tolerances}: embedded in every output file.
inline json provenance(std::uint64_t seed, const Tolerance& tol) {
  return {{"tool", tool_name},
          {"version", tool_version},
          {"seed", seed},
          {"tol", {{"abs", tol.abs}, {"rel", tol.rel}}}};
}

inline json spectrum_to_json(const SpectrumSet& s) {
  return {{"values", to_json(s.sorted())},
          {"source", s.provenance},
          {"is_real", s.is_real()},
          {"is_nonneg", s.is_nonneg()}};
}

inline json classification_to_json(const Classification& c) {
  return {{"formally_selfadjoint", c.formally_selfadjoint},
          {"formally_normal", c.formally_normal},
          {"c2_positive", c.c2_positive},
          {"is_luders", c.is_luders},
          {"haagerup_left", c.haagerup_left},
          {"haagerup_right", c.haagerup_right},
          {"selfadjoint_residual", c.selfadjoint_residual},
          {"normal_residual", c.normal_residual}};
}

inline json record_to_json(const InstanceRecord& r) {
  json j = {{"seed", r.seed},
            {"index", r.index},
            {"dims", {r.m, r.n}},
            {"J", r.terms},
            {"hausdorff", r.hausdorff},
            {"scale", r.scale},
            {"verdict", r.pass ? "PASS" : "FAIL"}};
  if (r.formula_agreement >= 0) j["formula_agreement"] = r.formula_agreement;
  return j;
}

inline json verify_report_to_json(const VerifyReport& rep) {
  json recs = json::array();
  for (const auto& r : rep.records) recs.push_back(record_to_json(r));
  return {{"theorem", to_string(rep.theorem)},
          {"instances", rep.records.size()},
          {"threshold", rep.threshold},
          {"failures", rep.failures()},
          {"max_relative_metric", rep.max_metric()},
          {"verdict", rep.all_pass() ? "PASS" : "FAIL"},
          {"records", recs}};
}

/// seed,n,J,d_H,pass  (n is "m x n" of the instance)
inline std::string verify_report_to_csv(const VerifyReport& rep) {
  std::ostringstream os;
  os << "seed,n,J,d_H,pass\n";
  for (const auto& r : rep.records)
    os << r.seed << ',' << r.m << 'x' << r.n << ',' << r.terms << ',' << fmt17(r.hausdorff) << ','
       << (r.pass ? 1 : 0) << '\n';
  return os.str();
}

inline json profile_to_json(const SemidiagProfile& p, std::size_t terms, Index bandwidth) {
  json pts = json::array();
  for (const auto& pt : p.points) pts.push_back({{"r", pt.rank}, {"s", pt.budget}});
  json j = {{"N", p.ambient},
            {"J", terms},
            {"b", bandwidth},
            {"profile", pts},
            {"max", p.max_budget},
            {"argmax_r", p.argmax_rank}};
  j["growth_exponent"] = std::isfinite(p.growth_exponent) ? json(p.growth_exponent) : json(nullptr);
  return j;
}

/// N,J,b,r,s
inline std::string profile_to_csv(const SemidiagProfile& p, std::size_t terms, Index bandwidth) {
  std::ostringstream os;
  os << "N,J,b,r,s\n";
  for (const auto& pt : p.points)
    os << p.ambient << ',' << terms << ',' << bandwidth << ',' << pt.rank << ',' << fmt17(pt.budget)
       << '\n';
  return os.str();
}

inline json search_result_to_json(const SearchResult& r) {
  auto mats = [](const std::vector<CMatrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(matrix_to_json(m));
    return a;
  };
  json params = json::array();
  for (Index i = 0; i < r.best_params.size(); ++i) params.push_back(r.best_params(i));
  json j = {{"kind", r.kind},
            {"dim", r.dim},
            {"terms", r.terms},
            {"seed", r.seed},
            {"residual", r.residual},
            {"success", r.success},
            {"iterations", r.iterations},
            {"restarts_used", r.restarts_used},
            {"best_restart", r.best_restart},
            {"best_params", params},
            {"factors_C", mats(r.factors_c)},
            {"coeffs_A", mats(r.coeffs_a)},
            {"coeffs_B", mats(r.coeffs_b)},
            {"trace", r.trace},
            {"certificate",
             {{"psd_mins", r.certificate.psd_mins},
              {"residual_recheck", r.certificate.residual_recheck}}}};
  if (r.kind == "magajna") {
    j["lambda"] = to_json(r.lambda);
    j["factors_D"] = mats(r.factors_d);
  }
  return j;
}

/// N,inf_abs_F,lower,upper
inline std::string probe_to_csv(const ProbeReport& rep) {
  std::ostringstream os;
  os << "N,inf_abs_F,lower,upper\n";
  for (const auto& r : rep.rows)
    os << r.n << ',' << fmt17(r.inf_abs_f) << ',' << fmt17(r.lower) << ',' << fmt17(r.upper) << '\n';
  return os.str();
}

inline json probe_to_json(const ProbeReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"N", r.n},
                    {"inf_abs_F", r.inf_abs_f},
                    {"lower", r.lower},
                    {"upper", std::isfinite(r.upper) ? json(r.upper) : json(nullptr)},
                    {"certified", r.certified}});
  return {{"rows", rows}, {"monotone_growth", rep.monotone_growth}};
}

// ---------------------------------------------------------------------------
// Files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace elop

#endif // ELOP_IO_HPP
