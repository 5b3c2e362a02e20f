#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "dirac/io.hpp"
#include "dirac/weyl.hpp"
#include "fixtures.hpp"

using namespace dirac;

TEST_SUITE("io") {

TEST_CASE("triple documents round-trip bit-exactly") {
  const AdmissibleTriple t = fixtures::t1();
  const AdmissibleTriple back = triple_from_json_text(triple_to_json(t));
  CHECK(back.n == t.n);
  CHECK(back.sig.m1 == t.sig.m1);
  CHECK(back.sig.m2 == t.sig.m2);
  CHECK((back.A - t.A).norm() == 0.0);
  CHECK((back.S0 - t.S0).norm() == 0.0);
  CHECK((back.theta1 - t.theta1).norm() == 0.0);
  CHECK((back.theta2 - t.theta2).norm() == 0.0);
}

TEST_CASE("realization documents round-trip bit-exactly") {
  const Realization r = fixtures::fixture_realization();
  const Realization back = realization_from_json_text(realization_to_json(r));
  CHECK((back.Acal - r.Acal).norm() == 0.0);
  CHECK((back.B - r.B).norm() == 0.0);
  CHECK((back.Ccal - r.Ccal).norm() == 0.0);
}

TEST_CASE("potential documents round-trip bit-exactly") {
  const AdmissibleTriple t = fixtures::t1();
  const std::vector<Mat> C = potential(t, 3);
  const auto [back, sig] = potential_from_json_text(potential_to_json(C, t.sig));
  REQUIRE(back.size() == C.size());
  CHECK(sig.m1 == t.sig.m1);
  CHECK(sig.m2 == t.sig.m2);
  for (size_t k = 0; k < C.size(); ++k) CHECK((back[k] - C[k]).norm() == 0.0);
}

TEST_CASE("grid parsing") {
  const std::vector<Complex> g =
      grid_from_json_text("{\"z\": [[0, -1], [0.5, -0.25]]}");
  REQUIRE(g.size() == 2);
  CHECK(g[0] == Complex(0, -1));
  CHECK(g[1] == Complex(0.5, -0.25));
  CHECK_THROWS_AS(grid_from_json_text("{\"z\": []}"), InputError);
  CHECK_THROWS_AS(grid_from_json_text("{\"z\": [[1]]}"), InputError);
}

TEST_CASE("malformed input raises InputError, bad math raises Error") {
  CHECK_THROWS_AS(triple_from_json_text("not json"), InputError);
  CHECK_THROWS_AS(triple_from_json_text("[1, 2]"), InputError);
  CHECK_THROWS_AS(triple_from_json_text("{\"n\": 1}"), InputError);
  const std::string wrong_dims =
      "{\"n\": 2, \"m1\": 1, \"m2\": 1, \"A\": [[[0,1]]], \"S0\": [[[1,0]]],"
      " \"theta1\": [[[2,0]]], \"theta2\": [[[1,0]]]}";
  CHECK_THROWS_AS(triple_from_json_text(wrong_dims), InputError);
  const std::string bad_s0 =
      "{\"n\": 1, \"m1\": 1, \"m2\": 1, \"A\": [[[0,1]]], \"S0\": [[[-1,0]]],"
      " \"theta1\": [[[2,0]]], \"theta2\": [[[1.4142135623730951,0]]]}";
  CHECK_THROWS_WITH_AS(triple_from_json_text(bad_s0),
                       doctest::Contains("S0NotPositive"), Error);
}

TEST_CASE("weyl table carries the grid and parses back to full precision") {
  const AdmissibleTriple t = fixtures::t1();
  const WeylEvaluator ev(t);
  const std::vector<Complex> grid{Complex(0, -1), Complex(0.5, -0.25)};
  std::vector<Mat> vals;
  for (const Complex z : grid) vals.push_back(ev.eval(z));
  const std::string csv = weyl_csv(grid, vals, t.sig);
  REQUIRE(csv.substr(0, csv.find('\n')) ==
          "z_re,z_im,phi_00_re,phi_00_im,norm");
  std::istringstream is(csv);
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  const size_t p1 = line.find(','), p2 = line.find(',', p1 + 1);
  const size_t p3 = line.find(',', p2 + 1);
  const double re = std::strtod(line.c_str() + p2 + 1, nullptr);
  const double im = std::strtod(line.c_str() + p3 + 1, nullptr);
  CHECK(re == vals[0](0, 0).real());
  CHECK(im == vals[0](0, 0).imag());
}

TEST_CASE("asymptotics report serializes rows and footer") {
  const AsymptoticsReport rep = asymptotics_report(fixtures::t1(), 3);
  const std::string csv = asymptotics_csv(rep);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "k,rho_norm,Ck_minus_I_norm,lmin_Rk,lmin_Qk");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const nlohmann::json foot = nlohmann::json::parse(asymptotics_footer_json(rep));
  CHECK(foot["epsilon_gap"].is_null());
  CHECK(foot["kappa_Q"].is_null());
  CHECK(foot["q_route_available"] == false);
  CHECK(foot["first_k_small_rho"] == 1);
  CHECK(foot["r_growth_k"] == -1);
  CHECK(std::abs(foot["kappa_R"][0][0][0].get<double>() - 0.5) < 1e-12);
  CHECK(std::abs(foot["lmin_F"].get<double>() - 4.0) < 1e-12);
}

TEST_CASE("stability report serializes rows and summary") {
  PerturbationSpec spec;
  spec.samples = 2;
  spec.k_max = 10;
  spec.seed = 3;
  const StabilityReport rep =
      stability_sweep(fixtures::fixture_realization(), {1e-4}, spec);
  const std::string csv = stability_csv(rep);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "delta,sample,accepted,fail_reason,dX,dC_sup,dC_head,dC_tail,"
        "tail_bound,tail_ok");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const nlohmann::json sum = nlohmann::json::parse(stability_summary_json(rep));
  CHECK(sum["seed"] == 3);
  CHECK(sum["k_max"] == 10);
  REQUIRE(sum["per_delta"].size() == 1);
  CHECK(sum["per_delta"][0]["rejected"] == 0);
  CHECK(sum["per_delta"][0]["median_dX"].get<double>() > 0.0);
}

TEST_CASE("text files round-trip and missing files are reported") {
  const std::string path = "io_roundtrip_probe.txt";
  write_text_file(path, "line one\nline two\n");
  CHECK(read_text_file(path) == "line one\nline two\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("does_not_exist_anywhere.json"), InputError);
}

}  // TEST_SUITE
