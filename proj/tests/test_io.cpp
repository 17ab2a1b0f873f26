#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hse/cli.hpp"
#include "hse/io.hpp"
#include "hse/oracle.hpp"
#include "test_support.hpp"

using namespace hse;
using namespace hse::testing;

namespace {

std::string error_code(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.code();
  }
  return "";
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("hse_test_io_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kDiag = R"({"group": [], "complex": {"shape": "strict", "psi": [[{}, {}], [{}, {"[]": 2}]]}})";
const char* kOneMinusG = R"({"group": [2], "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]}})";

}  // namespace

TEST_CASE("minimal instance") {
  InstanceFile f = parse_instance(kOneMinusG);
  CHECK(f.G == FiniteAbelianGroup({2}));
  CHECK(f.strict);
  CHECK(f.C.psi == zg_matrix(f.G, {{{1, -1}}}));
  CHECK(!f.lambda);
  CHECK(!f.X);
}

TEST_CASE("integers as strings and lambda entries") {
  InstanceFile f = parse_instance(R"({
    "group": [4],
    "complex": {"shape": "strict", "psi": [[{"[0]": "123456789012345678901234567890", "[3]": -1}]]},
    "metadata": {"seed": 5, "description": "big"}
  })");
  CHECK(f.C.psi(0, 0)[0] == mpz_class("123456789012345678901234567890"));
  CHECK(f.C.psi(0, 0)[3] == -1);
  CHECK(*f.seed == 5);
  CHECK(f.description == "big");

  // r_chi = 1 only at the trivial character for psi = 1 - g over Z/4.
  InstanceFile g = parse_instance(R"({
    "group": [4],
    "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]},
    "lambda": {"conductor": 4, "blocks": [[["3/2"]], [], [], []]}
  })");
  REQUIRE(g.lambda);
  CHECK(g.lambda->blocks[0](0, 0) == Cyc(mpq_class(3, 2)));
  CHECK(g.lambda->blocks[1].rows() == 0);
}

TEST_CASE("semantic errors carry codes") {
  CHECK(error_code(R"({"group": [4], "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]},
    "lambda": {"conductor": 4, "blocks": [[["1", "0"]], [], [], []]}})") == "E_LAMBDA_SHAPE");
  CHECK(error_code(R"({"group": [4], "complex": {"shape": "strict", "psi": [[{"[0]": 1}]]},
    "lambda": {"conductor": 4, "blocks": [[["1"]], [], []]}})") == "E_LAMBDA_SHAPE");
  CHECK(error_code(R"({"group": [4], "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]},
    "lambda": {"conductor": 3, "blocks": [[["1"]], [], [], []]}})") == "E_LAMBDA_FIELD");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{}, {}]]}})") == "E_MATRIX_SHAPE");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{}], [{}, {}]]}})") ==
        "E_MATRIX_SHAPE");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{"[0,1]": 1}]]}})") == "E_ELEMENT");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{"[0]": "1.5"}]]}})") == "E_NUMBER");
  CHECK(error_code(R"({"group": [2, 3], "complex": {"shape": "strict", "psi": []}})") == "E_GROUP");
  CHECK(error_code(R"({"group": [2]})") == "E_FIELD");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "loop"}})") == "E_COMPLEX");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{}]]}, "X": [[{}, {}]]})") ==
        "E_X_RANGE");
  CHECK(error_code(R"({"group": [2], "complex": {"shape": "strict", "psi": [[{}]]}, "subgroup": [[2]]})") ==
        "E_SUBGROUP");
  // d1 d2 != 0.
  CHECK(error_code(R"({"group": [], "complex": {"shape": "three_term", "d1": [[{"[]": 1}]], "d2": [[{"[]": 1}]]}})") ==
        "E_COMPLEX");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_instance("{\n  \"group\": [2],\n  \"complex\": {,}\n}");
    FAIL("no error");
  } catch (const InstanceError& e) {
    CHECK(e.code() == "E_SYNTAX");
    CHECK(e.line() == 3);
    CHECK(e.column() == 15);
  }
}

TEST_CASE("generated instances round trip byte for byte") {
  int n = 0;
  for (const auto& f : kGroups) {
    for (unsigned seed = 1; seed <= 4; ++seed) {
      oracle::InstanceSpec spec;
      spec.seed = seed;
      spec.group = f;
      spec.d = 2 + seed % 2;
      spec.a = seed % 2;
      spec.x_kind = spec.a ? oracle::XKind::separable : oracle::XKind::none;
      spec.shape = seed == 4 ? oracle::Shape::three_term : oracle::Shape::strict;
      oracle::Instance I = oracle::random_instance(spec);
      InstanceFile file;
      file.group = f;
      file.G = I.G;
      file.strict = I.strict.has_value();
      if (file.strict) file.C = *I.strict;
      else file.three = *I.three;
      file.lambda = I.lambda;
      file.X = I.X;
      file.seed = seed;
      file.description = "round trip";
      const std::string text = serialize_instance(file);
      InstanceFile back = parse_instance(text);
      CHECK(serialize_instance(back) == text);
      if (file.strict) CHECK(back.C.psi == file.C.psi);
      if (file.lambda) {
        REQUIRE(back.lambda);
        CHECK(back.lambda->blocks == file.lambda->blocks);
      }
      ++n;
    }
  }
  CHECK(n >= 20);
}

TEST_CASE("cli: cohomology of the identity") {
  auto path = write_temp("identity", R"({"group": [2], "complex": {"shape": "strict",
    "psi": [[{"[0]": 1}, {}], [{}, {"[0]": 1}]]}})");
  Run r = run({"cohomology", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("H1 = 0, H2 = 0") != std::string::npos);
}

TEST_CASE("cli: eta and check-charels on diag(0, 2)") {
  auto path = write_temp("diag", kDiag);
  Run r = run({"eta", "--a", "1", "--x", "b1", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("eta = 2*b1\n") != std::string::npos);
  CHECK(r.out.find("I(eta) = <2>\n") != std::string::npos);
  CHECK(r.out.find("minor formula agrees: true") != std::string::npos);

  Run c = run({"check-charels", "--x", "b1", path});
  CHECK(c.code == 0);
  CHECK(c.out.find("I(eta) == Fit^a: true") != std::string::npos);

  Run p = run({"pairing", "--x", "b1", "--oracle", path});
  CHECK(p.code == 0);
  CHECK(p.out.find("perfect: true") != std::string::npos);
  CHECK(p.out.find("oracle: pass") != std::string::npos);

  Run f = run({"fitting", "--oracle", path});
  CHECK(f.code == 0);
  CHECK(f.out.find("Fit^1(H2) = <2>") != std::string::npos);

  CHECK(run({"dual", path}).code == 0);
  CHECK(run({"oracle", path}).code == 0);
}

TEST_CASE("cli: reports are deterministic") {
  auto path = write_temp("det", kOneMinusG);
  Run a = run({"check-charels", "--x", "b1", path});
  Run b = run({"check-charels", "--x", "b1", path});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: gen writes a parseable instance") {
  Run g = run({"gen", "--group", "2,2", "--d", "3", "--a", "1", "--seed", "9"});
  REQUIRE(g.code == 0);
  InstanceFile f = parse_instance(g.out);
  CHECK(f.G == FiniteAbelianGroup({2, 2}));
  CHECK(f.d() == 3);
  REQUIRE(f.X);
  CHECK(f.X->cols() == 1);
  CHECK(run({"gen", "--group", "2,2", "--d", "3", "--a", "1", "--seed", "9"}).out == g.out);
  auto path = write_temp("gen", g.out);
  Run c = run({"check-charels", path});
  CHECK(c.code == 0);
  CHECK(c.out.find("I(eta) == Fit^a: true") != std::string::npos);
}

TEST_CASE("cli: check-mrs on 1 - g with J = G") {
  auto path = write_temp("mrs", R"({"group": [2], "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]},
    "X": [], "Xprime": [[{"[0]": 1}]]})");
  Run r = run({"check-mrs", "--subgroup", "g1", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("ok: true") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"cohomology", "/nonexistent/file.json"}).code == 2);
  auto bad = write_temp("bad", "{\"group\": [2], ");
  Run r = run({"cohomology", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("E_SYNTAX") != std::string::npos);
  auto diag = write_temp("diag2", kDiag);
  CHECK(run({"eta", "--a", "1", diag}).code == 2);        // no X anywhere
  CHECK(run({"eta", "--x", "b3", diag}).code == 2);       // out of range
  CHECK(run({"reduce", diag}).code == 2);                 // needs three-term
  // A user x outside Z[G] e_(a) is a precondition error.
  auto path = write_temp("badx", R"({"group": [2], "complex": {"shape": "strict", "psi": [[{"[0]": 1, "[1]": -1}]]},
    "x_element": {"[0]": 1}})");
  CHECK(run({"check-charels", "--x", "b1", path}).code == 2);
}
