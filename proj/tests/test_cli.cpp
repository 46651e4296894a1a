#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "morse/scene_io.hpp"
#include "morse/selfcheck.hpp"

#ifndef MORSE_CLI_BIN
#error "MORSE_CLI_BIN must point at the command-line binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string temp_path(const std::string& stem) {
  return "/tmp/morse_cli_test_" + stem + "_" +
         std::to_string(static_cast<long>(getpid()));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = temp_path("stdout");
  const std::string cmd = env + (env.empty() ? "" : " ") +
                          std::string(MORSE_CLI_BIN) + " " + args + " > " +
                          out_path + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

std::string write_torus_scene() {
  morse::Scene s;
  s.n = 2;
  s.boundary.push_back({1.0, morse::HermitianMatrix::diagonal({3.0}),
                        morse::HermitianMatrix::diagonal({-2.0})});
  const std::string path = temp_path("scene") + ".json";
  std::ofstream out(path, std::ios::binary);
  out << morse::scene_to_text(s);
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("bound subcommand prints the weak bound as CSV") {
  const std::string scene = write_torus_scene();
  const RunResult r = run_cli("bound -i " + scene + " -q 0");
  std::remove(scene.c_str());

  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "grade,bulk,boundary,total,skipped_degenerate_bulk");
  const auto fields = split_csv(lines[1]);
  REQUIRE(fields.size() == 5);
  CHECK(fields[0] == "0");
  CHECK_THAT(std::stod(fields[3]), Catch::Matchers::WithinRel(2.25, 1e-12));
  CHECK(fields[4] == "0");
}

TEST_CASE("exit codes distinguish failure classes") {
  const std::string scene = write_torus_scene();

  // Unbounded region at grade 1: divergent input.
  CHECK(run_cli("bound -i " + scene + " -q 1").exit_code == 3);

  // Malformed scene file: parse failure.
  const std::string bad = temp_path("bad") + ".json";
  {
    std::ofstream out(bad, std::ios::binary);
    out << "{ not json";
  }
  CHECK(run_cli("bound -i " + bad + " -q 0").exit_code == 2);
  std::remove(bad.c_str());

  // Missing file: parse failure.
  CHECK(run_cli("bound -i /nonexistent.json -q 0").exit_code == 2);

  // Bad flag value rejected by the option parser.
  CHECK(run_cli("check --suite nosuch").exit_code == 2);

  // Degenerate torus data.
  CHECK(run_cli("torus --lambda 0 --mu -1 -q 0").exit_code == 3);

  std::remove(scene.c_str());
}

TEST_CASE("torus subcommand prints the convergence table") {
  const RunResult r = run_cli("torus --lambda 3 --mu -2 -q 0 -k 1,10,100");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "k,dim,scaled_dim,limit,abs_error");

  const auto row1 = split_csv(lines[1]);
  REQUIRE(row1.size() == 5);
  CHECK(row1[0] == "1");
  CHECK(row1[1] == "4");
  const auto row2 = split_csv(lines[2]);
  CHECK(row2[0] == "10");
  CHECK(row2[1] == "240");
  const auto row3 = split_csv(lines[3]);
  CHECK(row3[0] == "100");
  CHECK(row3[1] == "22650");
  CHECK_THAT(std::stod(row3[3]), Catch::Matchers::WithinRel(2.25, 1e-12));
}

TEST_CASE("strong subcommand prints per-grade terms and the total") {
  const std::string scene = write_torus_scene();
  const RunResult r = run_cli("strong -i " + scene + " -q 1 --mode concave");
  std::remove(scene.c_str());

  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "row_kind,grade,sign,bulk,boundary,value");
  const auto term = split_csv(lines[1]);
  CHECK(term[0] == "term");
  CHECK(term[1] == "0");
  const auto total = split_csv(lines[2]);
  CHECK(total[0] == "total");
  CHECK_THAT(std::stod(total[5]), Catch::Matchers::WithinRel(2.25, 1e-12));
}

TEST_CASE("check subcommand runs the fast suites") {
  const RunResult holefill = run_cli("check --suite holefill");
  CHECK(holefill.exit_code == 0);
  CHECK(holefill.out.find("suite holefill:") != std::string::npos);
  CHECK(holefill.out.find("FAIL") == std::string::npos);

  const RunResult zq = run_cli("check --suite zq");
  CHECK(zq.exit_code == 0);
}

TEST_CASE("output flag writes the same bytes to a file") {
  const std::string scene = write_torus_scene();
  const std::string out_path = temp_path("bound_csv");
  const RunResult direct = run_cli("bound -i " + scene + " -q 0");
  const RunResult filed =
      run_cli("bound -i " + scene + " -q 0 -o " + out_path);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(out_path) == direct.out);
  std::remove(out_path.c_str());
  std::remove(scene.c_str());
}

TEST_CASE("runs are byte-identical across repeats and thread counts") {
  morse::selfcheck::Rng rng(1515);
  morse::Scene s;
  s.n = 3;
  for (int i = 0; i < 200; ++i) {
    morse::HermitianMatrix levi = morse::selfcheck::random_posdef(rng, 2);
    s.boundary.push_back({rng.uniform(0.0, 1.0),
                          morse::selfcheck::random_hermitian(rng, 2),
                          morse::HermitianMatrix(-levi.matrix())});
  }
  for (int i = 0; i < 500; ++i)
    s.bulk.push_back({rng.uniform(0.0, 1.0),
                      morse::selfcheck::random_nondegenerate(rng, 3)});
  const std::string path = temp_path("big_scene") + ".json";
  {
    std::ofstream out(path, std::ios::binary);
    out << morse::scene_to_text(s);
  }

  const std::string args = "bound -i " + path + " -q 1";
  const RunResult first = run_cli(args, "MORSE_THREADS=1");
  const RunResult second = run_cli(args, "MORSE_THREADS=1");
  const RunResult parallel = run_cli(args, "MORSE_THREADS=8");
  std::remove(path.c_str());

  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == parallel.out);
  CHECK(!first.out.empty());

  const RunResult t1 = run_cli("torus --lambda 2,3 --mu -1,-1 -q 1 -k 10,40");
  const RunResult t2 = run_cli("torus --lambda 2,3 --mu -1,-1 -q 1 -k 10,40");
  CHECK(t1.out == t2.out);
}
