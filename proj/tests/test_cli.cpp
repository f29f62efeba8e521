#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using forminv::cli::run_command;

namespace {

std::string data(const std::string& name) { return std::string(FORMINV_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = {}) {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = run_command(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string after_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

}  // namespace

TEST_CASE("invert with all methods prints the Catalan inverse") {
  Run r = run({"invert", "--map", data("catalan.json"), "--deg", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("z + z^2 + 2*z^3 + 5*z^4 + 14*z^5 + 42*z^6 + 132*z^7 + 429*z^8") != std::string::npos);
  CHECK(r.out.find("all methods agree") != std::string::npos);
}

TEST_CASE("the map can come from stdin") {
  std::string doc = R"({"n":1,"D":4,"components":[[{"exp":[1],"c":"1"},{"exp":[2],"c":"-1"}]]})";
  Run r = run({"invert", "--method", "recurrent"}, doc);
  CHECK(r.code == 0);
  CHECK(r.out.find("5*z^4") != std::string::npos);
}

TEST_CASE("flow at -1 equals the BCW inverse") {
  Run flow = run({"flow", "--map", data("mixed_n2.json"), "--t", "-1"});
  Run bcw = run({"invert", "--map", data("mixed_n2.json"), "--method", "bcw"});
  REQUIRE(flow.code == 0);
  REQUIRE(bcw.code == 0);
  CHECK(after_first_line(flow.out) == after_first_line(bcw.out));
  Run sym = run({"flow", "--map", data("catalan.json"), "--deg", "4"});
  CHECK(sym.code == 0);
  CHECK(sym.out.find("(t^2 - t)*z^3") != std::string::npos);
}

TEST_CASE("power and JSON output") {
  Run r = run({"power", "--map", data("nilpotent_quadratic.json"), "--m", "3", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find(R"({"exp": [0, 2], "c": "-3"})") != std::string::npos);
}

TEST_CASE("trees lists every tree up to the given size") {
  Run r = run({"trees", "--max-size", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("17 trees") != std::string::npos);
  CHECK(r.out.find("(()())") != std::string::npos);
}

TEST_CASE("verify suites pass on valid input") {
  CHECK(run({"verify", "--map", data("catalan.json"), "--deg", "6"}).code == 0);
  CHECK(run({"verify", "--map", data("nilpotent_quadratic.json"), "--suite", "newp"}).code == 0);
  CHECK(run({"verify", "--map", data("mixed_n2.json"), "--suite", "prop310", "--deg", "5"}).code == 0);
  Run j = run({"verify", "--map", data("triangular_cubic_n3.json"), "--suite", "euler", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"status\"") != std::string::npos);
}

TEST_CASE("probe reports where the layers stop") {
  Run r = run({"probe", "--map", data("triangular_cubic_n3.json"), "--layers", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("last nonzero layer") != std::string::npos);
  CHECK(run({"probe", "--map", data("catalan.json")}).code == 2);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run({"invert", "--map", data("missing.json")}).code == 2);
  CHECK(run({"invert", "--bogus"}).code == 2);
  CHECK(run({"invert", "--method", "newton", "--map", data("catalan.json")}).code == 2);
  CHECK(run({"invert"}, "{\"n\": 1,,}").code == 2);
  Run c = run({"invert"}, R"({"n":1,"D":4,"components":[[{"exp":[0],"c":"1"},{"exp":[1],"c":"1"}]]})");
  CHECK(c.code == 2);
  CHECK_FALSE(c.err.empty());
  CHECK(run({"invert", "--method", "homog", "--map", data("mixed_n2.json")}).code == 2);
  CHECK(run({"invert", "--method", "lagrange", "--map", data("nilpotent_quadratic.json")}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("output is identical across runs and thread counts") {
  auto a = run({"invert", "--map", data("triangular_cubic_n3.json"), "--method", "bcw", "--threads", "1"});
  auto b = run({"invert", "--map", data("triangular_cubic_n3.json"), "--method", "bcw", "--threads", "4"});
  auto c = run({"invert", "--map", data("triangular_cubic_n3.json"), "--method", "bcw", "--threads", "1"});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("bench writes a CSV") {
  auto path = std::filesystem::temp_directory_path() / "forminv_cli_bench.csv";
  Run r = run({"bench", "--map", data("catalan.json"), "--deg-range", "4..6", "--repeats", "1", "--csv",
               path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("all methods hash-agree") != std::string::npos);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "input_id,method,degree,millis,terms,agree_hash");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 8);
  std::filesystem::remove(path);
}
