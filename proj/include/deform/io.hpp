#ifndef DEFORM_IO_HPP
#define DEFORM_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "deform/errors.hpp"
#include "deform/hermitian.hpp"
#include "deform/monotonicity.hpp"
#include "deform/report.hpp"
#include "deform/state.hpp"

namespace deform::io {

using json = nlohmann::ordered_json;

// --- Hermitian matrix file format -----------------------------------------
//
// { "dim": n, "re": [[..],..], "im": [[..],..] }
// re must be symmetric and im antisymmetric (within 1e-10), so the encoded
// matrix re + i*im is Hermitian.  Doubles are serialized losslessly.

inline json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
    throw parse_error("matrix: expected an object with dim, re, im");
  const auto dim_field = j.at("dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1)
    throw parse_error("matrix: dim must be a positive integer");
  const Eigen::Index n = dim_field.get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  auto shape_ok = [n](const json& grid) {
    if (!grid.is_array() || grid.size() != static_cast<std::size_t>(n)) return false;
    for (const auto& row : grid)
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) return false;
    return true;
  };
  if (!shape_ok(re) || !shape_ok(im)) throw parse_error("matrix: re/im must be dim x dim arrays");

  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& re_v = re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      const auto& im_v = im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (!re_v.is_number() || !im_v.is_number()) throw parse_error("matrix: entries must be numbers");
      m(i, k) = Complex(re_v.get<double>(), im_v.get<double>());
    }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k <= i; ++k) {
      if (std::abs(m(i, k).real() - m(k, i).real()) > 1e-10)
        throw parse_error("matrix: re is not symmetric");
      if (std::abs(m(i, k).imag() + m(k, i).imag()) > 1e-10)
        throw parse_error("matrix: im is not antisymmetric");
    }
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON in " + origin);
  return j;
}

inline Matrix read_matrix_file(const std::string& path) {
  return matrix_from_json(parse_json(read_file(path), path));
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write file: " + path);
  out << matrix_to_json(m).dump(2) << '\n';
}

// --- digests ---------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// --- reports ----------------------------------------------------------------

inline json check_to_json(const Check& c) {
  return json{{"name", c.name},
              {"status", to_string(c.status)},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"tolerance", c.tolerance}};
}

/// Structured result of a CLI run: what ran, on which inputs, the computed
/// values and the named checks in a fixed order.
struct RunReport {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::vector<Check> checks;

  bool all_passed() const { return deform::all_passed(checks); }

  json to_json() const {
    json c = json::array();
    for (const auto& check : checks) c.push_back(check_to_json(check));
    return json{{"command", command},
                {"inputs", inputs},
                {"results", results},
                {"checks", std::move(c)},
                {"failures", count_failures(checks)}};
  }
};

inline json bound_report_to_json(const BoundReport& r) {
  json c = json::array();
  for (const auto& check : r.checks) c.push_back(check_to_json(check));
  return json{{"alpha", r.alpha}, {"s", r.s}, {"checks", std::move(c)}};
}

// --- certificates -----------------------------------------------------------

inline json loewner_pair_to_json(const LoewnerPair& p) {
  return json{{"u", p.u},
              {"v", p.v},
              {"fprime_u", p.fprime_u},
              {"fprime_v", p.fprime_v},
              {"divided_difference", p.divided_difference},
              {"determinant", p.determinant}};
}

inline LoewnerPair loewner_pair_from_json(const json& j) {
  LoewnerPair p;
  p.u = j.at("u").get<double>();
  p.v = j.at("v").get<double>();
  p.fprime_u = j.at("fprime_u").get<double>();
  p.fprime_v = j.at("fprime_v").get<double>();
  p.divided_difference = j.at("divided_difference").get<double>();
  p.determinant = j.at("determinant").get<double>();
  return p;
}

inline json certificate_to_json(const LoewnerCertificate& c) {
  return json{{"function", c.function_name},
              {"lambda", c.lambda},
              {"A", matrix_to_json(c.A)},
              {"B", matrix_to_json(c.B)},
              {"order_gap", c.order_gap},
              {"violation", c.violation},
              {"violation_tol", c.violation_tol},
              {"loewner_point", loewner_pair_to_json(c.loewner_point)},
              {"search", json{{"y", c.y},
                              {"epsilon", c.epsilon},
                              {"perturbation", c.perturbation},
                              {"seed", c.seed},
                              {"guided", c.guided}}}};
}

inline LoewnerCertificate certificate_from_json(const json& j) {
  try {
    LoewnerCertificate c;
    c.function_name = j.at("function").get<std::string>();
    deformed_function_from_name(c.function_name);  // validates
    c.lambda = j.at("lambda").get<double>();
    c.A = matrix_from_json(j.at("A"));
    c.B = matrix_from_json(j.at("B"));
    c.order_gap = j.at("order_gap").get<double>();
    c.violation = j.at("violation").get<double>();
    c.violation_tol = j.at("violation_tol").get<double>();
    c.loewner_point = loewner_pair_from_json(j.at("loewner_point"));
    const auto& s = j.at("search");
    c.y = s.at("y").get<double>();
    c.epsilon = s.at("epsilon").get<double>();
    c.perturbation = s.at("perturbation").get<double>();
    c.seed = s.at("seed").get<std::uint64_t>();
    c.guided = s.at("guided").get<bool>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("certificate: ") + e.what());
  }
}

// --- geodesic CSV -----------------------------------------------------------

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

/// Fixed column layout: t, alpha, dalpha_dt, escort_z, then one omega column
/// per probe.
inline std::string geodesic_csv(const std::vector<GeodesicRow>& rows, std::size_t n_probes) {
  std::ostringstream out;
  out << "t,alpha,dalpha_dt,escort_z";
  for (std::size_t k = 0; k < n_probes; ++k) out << ",probe_" << (k + 1);
  out << '\n';
  for (const auto& row : rows) {
    out << format_number(row.t) << ',' << format_number(row.alpha) << ','
        << format_number(row.dalpha_dt) << ',' << format_number(row.escort_z);
    for (std::size_t k = 0; k < n_probes; ++k) out << ',' << format_number(row.omega.at(k));
    out << '\n';
  }
  return out.str();
}

} // namespace deform::io

#endif // DEFORM_IO_HPP
