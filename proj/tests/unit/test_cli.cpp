#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Run cli(const std::string& args) {
  const std::string cmd = std::string(CFLR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "cflr_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    std::ofstream(d / "anbn.g") << "S -> a S b | a b\n";
    std::ofstream(d / "cycle.e") << "0 1 a\n1 2 a\n2 3 b\n3 0 b\n";
    std::ofstream(d / "dyck.g") << "S -> S S | ( S ) | eps\n";
    std::ofstream(d / "bad.g") << "S -> a |\n";
    return d;
  }();
  return dir;
}

std::string at(const char* name) { return (workdir() / name).string(); }

}  // namespace

TEST_CASE("build then query each index kind") {
  for (const char* kind : {"sat", "lin", "lindist"}) {
    const std::string idx = at(kind) + std::string(".idx");
    const Run build = cli("build -g " + at("anbn.g") + " -e " + at("cycle.e") + " --index " + kind + " -o " + idx);
    CHECK(build.status == 0);
    CHECK(build.out.find("entries=") != std::string::npos);
    CHECK(build.out.find("propagations=") != std::string::npos);
    CHECK(cli("query " + idx + " 1 3").out == "true\n");
    CHECK(cli("query " + idx + " 0 0").out == "true\n");
    CHECK(cli("query " + idx + " 0 3").out == "false\n");
  }
}

TEST_CASE("witness and shortest output") {
  const std::string idx = at("lindist.idx");
  cli("build -g " + at("anbn.g") + " -e " + at("cycle.e") + " --index lindist -o " + idx);
  CHECK(cli("witness " + idx + " 1 3").out == "length=2\n1 2 a\n2 3 b\n");
  const Run slp = cli("witness " + idx + " 1 3 --format slp");
  CHECK(slp.status == 0);
  CHECK(slp.out.rfind("rules=3 length=2\n", 0) == 0);
  CHECK(cli("shortest " + idx + " 1 3").out == "dist=2\n1 2 a\n2 3 b\n");
  CHECK(cli("shortest " + idx + " 0 3").out == "dist=inf\n");
  const Run none = cli("witness " + idx + " 0 3");
  CHECK(none.status == 1);
}

TEST_CASE("classify prints the form") {
  CHECK(cli("classify -g " + at("anbn.g")).out == "linear\n");
  CHECK(cli("classify -g " + at("dyck.g")).out == "general\n");
}

TEST_CASE("exit codes") {
  const std::string idx = at("sat.idx");
  cli("build -g " + at("anbn.g") + " -e " + at("cycle.e") + " --index sat -o " + idx);
  const Run range = cli("query " + idx + " 99 0");
  CHECK(range.status == 1);
  CHECK(range.out.find("vertex out of range") != std::string::npos);
  CHECK(cli("query " + at("missing.idx") + " 0 0").status == 1);
  CHECK(cli("query " + at("anbn.g") + " 0 0").status == 1);
  CHECK(cli("classify -g " + at("bad.g")).status == 1);
  CHECK(cli("build -g " + at("dyck.g") + " -e " + at("cycle.e") + " --index lin -o " + at("x.idx")).status == 1);
  CHECK(cli("build -g " + at("anbn.g") + " -e " + at("cycle.e") + " --index sat --no-normalize -o " + at("x.idx"))
            .status == 1);
  CHECK(cli("shortest " + idx + " 0 0").status == 1);
  CHECK(cli("").status == 2);
  CHECK(cli("query").status == 2);
  CHECK(cli("query " + idx + " one 0").status == 2);
  CHECK(cli("build -g x -e y --index nope -o z").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("--help").status == 0);
}

TEST_CASE("oracle subcommand") {
  const Run pairs = cli("oracle -g " + at("anbn.g") + " -e " + at("cycle.e"));
  CHECK(pairs.status == 0);
  CHECK(pairs.out == "0 0\n1 3\n");
  const Run walks = cli("oracle -g " + at("anbn.g") + " -e " + at("cycle.e") + " --from 1 --to 3 --max-len 4");
  CHECK(walks.out.find("walks=1") != std::string::npos);
}

TEST_CASE("census writes its reports") {
  const fs::path out = workdir() / "census";
  const Run run = cli("census " + std::string(CFLR_TEST_DATA) + "/census_mini --out " + out.string());
  CHECK(run.status == 0);
  CHECK(fs::exists(out / "census.csv"));
  CHECK(fs::exists(out / "aggregate.txt"));
  CHECK(cli("census " + at("nowhere")).status == 1);
}
