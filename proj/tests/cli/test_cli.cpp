#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "check.hpp"
#include "geomix_cli/commands.hpp"
#include "geomix_cli/spec_io.hpp"

using namespace geomix;
using namespace geomix::cli;

namespace {

const std::string kTwoAtom = R"({"atoms":[{"x":0.25,"mass":0.5},{"x":0.75,"mass":0.5}]})";
const std::string kArcsine = R"({"pieces":[{"lo":0,"hi":1,"family":"arcsine","params":{"v":0.5}}]})";

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" GEOMIX_TOOL_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

double central_binomial_ratio(int N) {
  double r = 1;
  for (int k = 1; k <= N; ++k) r *= (2.0 * k - 1) / (2.0 * k);
  return r;
}

}  // namespace

TEST_CASE("measure specs") {
  const MixtureMeasure m = parse_measure(nlohmann::json::parse(
      R"({"domain":"unit","atoms":[{"x":0.5,"mass":0.25}],
          "pieces":[{"lo":0,"hi":0.4,"family":"beta","params":{"a":2,"b":2},"mass":0.25},
                    {"lo":0.6,"hi":1,"family":"piecewise_poly","params":{"coeffs":[1,1]},"mass":0.5}]})"));
  CHECK(m.atoms().size() == 1);
  CHECK(m.pieces().size() == 2);
  CHECK_NEAR(total_mass(m), 1.0, 1e-13);
  CHECK(parse_measure(nlohmann::json::parse(R"({"domain":"halfline","atoms":[{"x":3,"mass":1}]})")).domain() ==
        Domain::half_line);
  for (const char* bad : {R"({})", R"({"domain":"circle","atoms":[{"x":0.5,"mass":1}]})",
                          R"({"atoms":[{"x":0.5}]})", R"({"atoms":[{"x":0.5,"mass":1,"w":2}]})",
                          R"({"pieces":[{"lo":0,"hi":1,"family":"gamma"}]})",
                          R"({"pieces":[{"lo":0,"hi":1,"family":"beta","params":{"a":2}}]})",
                          R"({"pieces":[{"lo":0,"hi":1,"family":"piecewise_poly","params":{"coeffs":[]}}]})"})
    CHECK_ERROR_KIND(parse_measure(nlohmann::json::parse(bad)), ErrorKind::parse);
  CHECK_ERROR_KIND(load_measure("{not json"), ErrorKind::parse);
  CHECK_ERROR_KIND(load_measure("/nonexistent/spec.json"), ErrorKind::parse);
  CHECK_ERROR_KIND(load_measure(R"({"atoms":[{"x":0.5,"mass":0.7}]})"), ErrorKind::argument);
}

TEST_CASE("report formatting") {
  CHECK(num(0.1 + 0.2).get<double>() == 0.3);
  CHECK(num(INFINITY).is_null());
  Report r;
  r.summary["b"] = num(1.0 / 3);
  r.summary["a"] = 2;
  r.table = Table{{"N", "p"}, {{0, 1}, {1, 2.0 / 3}}};
  CHECK(render(r, false) == "# a = 2\n# b = 0.333333333333333\nN,p\n0,1\n1,0.666666666666667\n");
  const auto j = nlohmann::json::parse(render(r, true));
  CHECK(j["table"]["p"][1].get<double>() == 0.666666666666667);
  CHECK(exit_code(ErrorKind::parse) == 2);
  CHECK(exit_code(ErrorKind::consistency) == 3);
  CHECK(exit_code(ErrorKind::range) == 4);
}

TEST_CASE("involute command") {
  const Report r = cmd_involute({kTwoAtom, 10}, {});
  CHECK(r.summary["atoms"] == nlohmann::json::parse("[[0,0.375],[0.5,0.25],[1,0.375]]"));
  CHECK(r.summary["roundtrip_residual"].get<double>() < 1e-12);
  CHECK(cmd_involute({kArcsine, 50}, {}).summary["roundtrip_residual"].get<double>() < 1e-8);
  CHECK_ERROR_KIND(cmd_involute({"{}", 10}, {}), ErrorKind::parse);
}

TEST_CASE("renewal command") {
  const Report r = cmd_renewal({kArcsine, 10, true}, {});
  REQUIRE(r.table);
  CHECK(r.table->columns == std::vector<std::string>{"N", "p_moment", "p_oracle", "abs_diff"});
  for (const auto& row : r.table->rows) {
    CHECK_NEAR(row[1], central_binomial_ratio(static_cast<int>(row[0])), 1e-13);
    CHECK(row[3] < 1e-9);
  }
  const Report z = cmd_renewal({kArcsine, 0, false}, {});
  REQUIRE(z.table->rows.size() == 1);
  CHECK(z.table->rows[0] == std::vector<double>{0, 1});
}

TEST_CASE("polymer, corrlen, continuous and arcsine commands") {
  const Report p = cmd_polymer({kArcsine, std::log(2.0), 20, true}, {});
  CHECK_NEAR(p.summary["free_energy"].get<double>(), std::log(4.0 / 3), 1e-12);
  CHECK_NEAR(p.summary["contact_fraction"].get<double>(), 2.0 / 3, 1e-12);
  CHECK(p.summary["max_rel_diff"].get<double>() < 1e-8);

  const Report c = cmd_corrlen({kArcsine, 0.5, {}}, {});
  CHECK(c.summary["N_lo"] == 50);
  CHECK(std::abs(c.summary["slope"].get<double>() + 0.5) < 0.03);
  CHECK_ERROR_KIND(cmd_corrlen({R"({"atoms":[{"x":0.4,"mass":1}]})", 0.5, {}}, {}), ErrorKind::range);

  const Report h = cmd_continuous(
      {R"({"domain":"halfline","atoms":[{"x":1,"mass":0.5},{"x":3,"mass":0.5}]})", {0.5, 1, 2}, true, 80}, {});
  for (const auto& row : h.table->rows) {
    CHECK_NEAR(row[2], 1.5 + 0.5 * std::exp(-2 * row[0]), 1e-12);
    CHECK(row[4] < 1e-6);
  }

  const Report a = cmd_arcsine({0.5, 0.6931, 5, 4}, {});
  CHECK_NEAR(a.summary["free_energy"].get<double>(), std::log(4.0 / 3), 1e-4);
  CHECK_NEAR(a.summary["contact_fraction"].get<double>(), 2.0 / 3, 1e-4);
  CHECK(a.summary["density"].size() == 4);
  CHECK_ERROR_KIND(cmd_arcsine({1.5, 0, 5, 0}, {}), ErrorKind::argument);
}

TEST_CASE("executable") {
  const Run a = run("renewal -m " + quoted(kArcsine) + " --n-max 20 --oracle");
  CHECK(a.code == 0);
  CHECK(a.out == run("renewal -m " + quoted(kArcsine) + " --n-max 20 --oracle").out);
  CHECK(a.out.find("N,p_moment,p_oracle,abs_diff\n0,1,1,0\n1,0.5,0.5,0\n2,0.375,") != std::string::npos);
  const Run j = run("--json arcsine --v 0.5 --beta 0.6931471805599453 --n-max 2");
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK_NEAR(doc["summary"]["c_atom"].get<double>(), 2.0 / 3, 1e-14);
  CHECK(run("involute -m '{}'").code == 2);
  CHECK(run("renewal -m " + quoted(kArcsine) + " --n-max -1").code == 2);
  CHECK(run("bogus").code != 0);
  CHECK(run("corrlen -m '{\"atoms\":[{\"x\":0.4,\"mass\":1}]}'").code == 4);
  CHECK(run("renewal -m " + quoted(kTwoAtom), "RENEWAL_TOL=abc").code == 2);
  CHECK(run("renewal -m " + quoted(kTwoAtom) + " --n-max 3", "RENEWAL_TOL=1e-8").code == 0);
  const Run help = run("polymer --help");
  CHECK(help.out.find("contact_fraction") != std::string::npos);
  CHECK(run("selftest --criterion 4").code == 0);
}
