#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "deform/io.hpp"
#include "deform/rng.hpp"

using namespace deform;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("deform_io_" + name)).string();
}

} // namespace

TEST_CASE("matrix JSON round trip is exact", "[io]") {
  Rng rng(201);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform_int(1, 8);
    const Matrix m = random_hermitian(rng, n, rng.uniform(1e-6, 1e6));
    const std::string text = io::matrix_to_json(m).dump();
    const Matrix back = io::matrix_from_json(io::parse_json(text, "roundtrip"));
    REQUIRE(back.rows() == m.rows());
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        CHECK(back(i, j).real() == m(i, j).real());  // bitwise, not approximate
        CHECK(back(i, j).imag() == m(i, j).imag());
      }
  }
}

TEST_CASE("matrix file IO", "[io]") {
  Rng rng(202);
  const Matrix m = random_hermitian(rng, 3);
  const std::string path = temp_path("matrix.json");
  io::write_matrix_file(path, m);
  const Matrix back = io::read_matrix_file(path);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_matrix_file(path), parse_error);  // gone now
}

TEST_CASE("matrix parsing rejects malformed input", "[io]") {
  using io::json;
  CHECK_THROWS_AS(io::matrix_from_json(json::array()), parse_error);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 2}, {"re", json::array()}}), parse_error);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 0},
                                            {"re", json::array()},
                                            {"im", json::array()}}),
                  parse_error);
  // wrong shape
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 2},
                                            {"re", {{1.0, 0.0}}},
                                            {"im", {{0.0, 0.0}, {0.0, 0.0}}}}),
                  parse_error);
  // re not symmetric
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 2},
                                            {"re", {{1.0, 0.5}, {0.2, 1.0}}},
                                            {"im", {{0.0, 0.0}, {0.0, 0.0}}}}),
                  parse_error);
  // im not antisymmetric
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 2},
                                            {"re", {{1.0, 0.0}, {0.0, 1.0}}},
                                            {"im", {{0.0, 0.3}, {0.3, 0.0}}}}),
                  parse_error);
  CHECK_THROWS_AS(io::parse_json("{not json", "test"), parse_error);
}

TEST_CASE("certificate JSON round trip", "[io]") {
  const auto cert = build_counterexample(DeformedFunction::u_minus_exp_phi);
  const auto j = io::certificate_to_json(cert);
  const auto back = io::certificate_from_json(j);
  CHECK(back.function_name == cert.function_name);
  CHECK(back.lambda == cert.lambda);
  CHECK((back.A - cert.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.B - cert.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.violation == cert.violation);
  CHECK(back.loewner_point.determinant == cert.loewner_point.determinant);
  CHECK(revalidate(back).ok);

  auto broken = j;
  broken.erase("A");
  CHECK_THROWS_AS(io::certificate_from_json(broken), parse_error);
}

TEST_CASE("run report JSON layout", "[io]") {
  io::RunReport report;
  report.command = "verify";
  report.inputs = {{"suite", "scalar"}};
  report.checks.push_back(Check::leq("a", 0.0, 1.0));
  report.checks.push_back(Check::leq("b", 2.0, 1.0));
  report.checks.push_back(Check::skipped_check("c"));
  const auto j = report.to_json();
  CHECK(j.at("command") == "verify");
  CHECK(j.at("failures") == 1);
  REQUIRE(j.at("checks").size() == 3);
  CHECK(j.at("checks")[0].at("status") == "pass");
  CHECK(j.at("checks")[1].at("status") == "fail");
  CHECK(j.at("checks")[2].at("status") == "skipped");
  // field order is part of the format
  const std::string dumped = j.dump();
  CHECK(dumped.find("\"command\"") < dumped.find("\"inputs\""));
  CHECK(dumped.find("\"inputs\"") < dumped.find("\"results\""));
  CHECK(dumped.find("\"results\"") < dumped.find("\"checks\""));
}

TEST_CASE("geodesic CSV layout", "[io]") {
  GeodesicRow row;
  row.t = 0.25;
  row.alpha = 0.5;
  row.dalpha_dt = -1.0;
  row.escort_z = 0.125;
  row.omega = {3.0, 4.0};
  const std::string csv = io::geodesic_csv({row}, 2);
  CHECK(csv == "t,alpha,dalpha_dt,escort_z,probe_1,probe_2\n"
               "2.500000000000e-01,5.000000000000e-01,-1.000000000000e+00,"
               "1.250000000000e-01,3.000000000000e+00,4.000000000000e+00\n");
}

TEST_CASE("fnv1a64 digest", "[io]") {
  CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(io::hex64(0xcbf29ce484222325ULL) == "0xcbf29ce484222325");
}
