#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "conifold/errors.hpp"
#include "parse.hpp"
#include "report.hpp"

using namespace conifold;
using namespace conifold::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("0.3+0.4i") == cplx(0.3, 0.4));
  CHECK(parse_complex("-1e-3i") == cplx(0.0, -1e-3));
  CHECK(parse_complex("2") == cplx(2.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("(1+i)/2") == cplx(0.5, 0.5));
  CHECK(parse_complex("2π/64") == cplx(2 * M_PI / 64));
  CHECK(parse_complex("pi/4") == cplx(M_PI / 4));
  CHECK(parse_complex("1.5e2-2.5i") == cplx(150.0, -2.5));
  CHECK(parse_complex("2^3") == cplx(8.0));
  // exact decimal arithmetic, one rounding at the end
  CHECK(parse_complex("0.1+0.2") == cplx(0.3));
  CHECK_THROWS_AS(parse_complex("1+"), DomainError);
  CHECK_THROWS_AS(parse_complex("abc"), DomainError);
  CHECK_THROWS_AS(parse_complex("1/0"), DomainError);
  CHECK_THROWS_AS(parse_real("1+i"), DomainError);
  auto kv = parse_assignments("A=0.3,B=0.2,k=2π/64");
  CHECK(kv.at("A") == cplx(0.3));
  CHECK(kv.at("k") == cplx(2 * M_PI / 64));
  CHECK_THROWS_AS(parse_assignments("A0.3"), DomainError);
  auto list = parse_complex_list("1,0.5+i");
  REQUIRE(list.size() == 2);
  CHECK(list[1] == cplx(0.5, 1.0));
}

TEST_CASE("float formatting") {
  json j;
  j["x"] = 0.1;
  j["y"] = 1.0 / 3.0;
  j["n"] = 3;
  std::string s = dump(j, 0);
  CHECK(s == "{\"x\":0.10000000000000001,\"y\":0.33333333333333331,\"n\":3}");
  CHECK(json::parse(s)["y"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("bernoulli report") {
  auto r = run_cli({"specfun", "eval", "--bernoulli", "4"});
  CHECK(r.code == kPass);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "specfun eval");
  CHECK(j["results"]["value"] == "-1/30");
  CHECK(j["pass"] == true);
}

TEST_CASE("report keys and determinism") {
  std::vector<std::string> args{"gw", "check-diff", "--t", "0.3+0.4i", "--lambda", "0.1+0.1i"};
  auto a = run_cli(args), b = run_cli(args);
  CHECK(a.code == kPass);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  for (const char* key : {"schema", "command", "params", "results", "residuals", "tolerances", "pass"})
    CHECK(j.contains(key));
  CHECK(j["residuals"]["diff"].get<double>() <= 1e-8);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"specfun", "eval", "--bernoulli", "-1"}).code == kUsageError);
  CHECK(run_cli({"gw", "eval", "--t", "0.3-0.4i", "--genus", "1"}).code == kUsageError);
  CHECK(run_cli({"gw", "eval", "--t", "zz"}).code == kUsageError);
  CHECK(run_cli({"nonsense"}).code == kUsageError);
  CHECK(run_cli({}).code == kUsageError);
  CHECK(run_cli({"--help"}).code == kPass);
  // a threshold no run can meet turns the check red
  CHECK(run_cli({"gw", "check-diff", "--tol", "0"}).code == kCheckFailed);
  CHECK(run_cli({"hirota", "check", "--data", "random"}).code == kPass);
}

TEST_CASE("lattice run with CSV") {
  std::string csv = "cli_test_al.csv";
  auto r = run_cli({"al", "run", "--N", "16", "--dt", "1e-2", "--steps", "100", "--sample-every", "50",
                    "--planewave", "A=0.3,B=0.2,k=2π/16", "--csv", csv});
  CHECK(r.code == kPass);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "step,time,site,re_a,im_a,re_b,im_b");
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows == 3 * 16);
  auto side = json::parse(std::ifstream(csv + ".json"));
  CHECK(side["c0_series"].size() == 3);
}

TEST_CASE("dispersionless run with CSV") {
  auto r = run_cli({"disp", "run", "--N", "32", "--horizon", "0.01", "--dt", "1e-3", "--sample-every", "5",
                    "--csv", "cli_test_disp"});
  CHECK(r.code == kPass);
  std::ifstream f("cli_test_disp_0.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,re_u,im_u,re_v,im_v");
  auto meta = json::parse(std::ifstream("cli_test_disp.json"));
  CHECK(meta["samples"].size() == 3);
  auto c = run_cli({"disp", "run", "--amp", "0.3", "--horizon", "20", "--dt", "1e-2"});
  CHECK(c.code == kCheckFailed);
  CHECK(json::parse(c.out)["results"].contains("catastrophe_time"));
}

TEST_CASE("dispersionless checks") {
  auto r = run_cli({"disp", "check", "--which", "identification"});
  CHECK(r.code == kPass);
  auto j = json::parse(r.out);
  CHECK(j["results"]["identification"].contains("difference_flipped"));
  CHECK(run_cli({"disp", "check", "--which", "hamiltonian"}).code == kPass);
  CHECK(run_cli({"disp", "check", "--which", "xdif"}).code == kPass);
  CHECK(run_cli({"disp", "check", "--which", "flows"}).code == kPass);
  // fails with the printed sign of f'''
  CHECK(run_cli({"disp", "check", "--which", "density"}).code == kCheckFailed);
  CHECK(run_cli({"disp", "check", "--which", "bogus"}).code == kUsageError);
}

TEST_CASE("executable exit status") {
  std::string cmd = std::string(CONIFOLD_FLOWS_EXE) + " specfun eval --bernoulli 4 > /dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  cmd = std::string(CONIFOLD_FLOWS_EXE) + " barnes eval --omega 0 2> /dev/null > /dev/null";
  status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
