// Copyright 2026 The fairdiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

// Scratch directory removed at exit.
struct ScratchDir {
  fs::path path;
  ScratchDir() : path(fs::temp_directory_path() / ("fairdiv_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const fs::path& workdir() {
  static const ScratchDir dir;
  return dir.path;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const fs::path out = workdir() / "stdout.txt";
  const std::string cmd = std::string(FAIRDIV_CLI) + " " + args + " > " + out.string() + " 2> " +
                          (workdir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out)};
}

const char* kLine =
    "id,groups,x\n"
    "p0,black,0\n"
    "p4,black,4\n"
    "p10,black,10\n"
    "w,white,4.5\n";

}  // namespace

TEST_CASE("cli: select with every max-min algorithm") {
  const auto in = write_file("line.csv", kLine);
  for (const char* a : {"fair-swap", "fair-gmm", "fair-flow", "fair-swap-overlap", "fair-flow-overlap", "oracle"}) {
    CAPTURE(a);
    const Run r = cli(std::string("select -i ") + in.string() + " -a " + a + " -c black=2,white=1 --no-timing");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["diversity"] == 4.5);
    CHECK(j["per_group_counts"]["black"] == 2);
    CHECK(j["per_group_counts"]["white"] == 1);
    CHECK(j["wall_ms"] == 0.0);
  }
  const Run k = cli("select -i " + in.string() + " -a fair-kcenter -c black=2,white=1");
  REQUIRE(k.code == 0);
  CHECK(nlohmann::json::parse(k.out)["radius"] == 0.5);
  const Run g = cli("select -i " + in.string() + " -a gmm -k 2 --seed 0");
  REQUIRE(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["selected"].size() == 2);
}

TEST_CASE("cli: output file and continuous search") {
  const auto in = write_file("line2.csv", kLine);
  const fs::path out = workdir() / "result.json";
  const Run r = cli("select -i " + in.string() + " -a fair-flow -c black=2,white=1 --search continuous --eps 0.05 -o " +
                    out.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["algorithm"] == "fair-flow");
  CHECK(j["diversity"].get<double>() >= 4.5 / (5 * 1.05));
}

TEST_CASE("cli: exit codes") {
  const auto in = write_file("line3.csv", kLine);
  CHECK(cli("select -i " + in.string() + " -a fair-swap -c nosuch=1").code == 2);
  CHECK(cli("select -i " + in.string() + " -a nosuch -c black=1").code == 2);
  CHECK(cli("select -i /nonexistent.csv -a fair-swap -c black=1").code == 2);
  CHECK(cli("select --bogus-flag").code == 2);
  const auto bad = write_file("bad.csv", "id,groups,x\na,g,zz\n");
  CHECK(cli("select -i " + bad.string() + " -a fair-gmm -c g=1").code == 2);
  CHECK(cli("select -i " + in.string() + " -a fair-swap -c black=4,white=1").code == 3);
  CHECK(cli("select -i " + in.string() + " -a fair-gmm -c black=3,white=1 --budget 0").code == 4);

  std::string big = "id,groups,x\n";
  for (int i = 0; i < 40; ++i) big += "e" + std::to_string(i) + ",g," + std::to_string(i) + "\n";
  const auto many = write_file("many.csv", big);
  CHECK(cli("oracle -i " + many.string() + " -c g=20 --budget 1000").code == 4);
  ::setenv("FAIRDIV_BUDGET", "1000", 1);
  CHECK(cli("oracle -i " + many.string() + " -c g=20").code == 4);
  ::unsetenv("FAIRDIV_BUDGET");
}

TEST_CASE("cli: oracle subcommand") {
  const auto in = write_file("line4.csv", kLine);
  Run r = cli("oracle -i " + in.string() + " -c black=2,white=1 --no-timing");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["diversity"] == 4.5);
  CHECK(j["enumerated"].get<int>() >= 1);
  r = cli("oracle -i " + in.string() + " -c black=2,white=1 --objective kcenter");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["radius"] == 0.5);
  CHECK(cli("oracle -i " + in.string() + " -c black=1 --objective median").code == 2);
}

TEST_CASE("cli: precomputed matrices and check-metric") {
  const auto m = write_file("m.csv", "0,1,5\n1,0,1\n5,1,0\n");
  const auto l = write_file("l.csv", "id,groups\na,x\nb,y\nc,x\n");
  Run r = cli("check-metric -i " + m.string() + " --labels " + l.string() + " --metric precomputed");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["clean"] == false);
  CHECK(j["violations"][0]["kind"] == "triangle");
  CHECK(cli("check-metric -i " + m.string() + " --labels " + l.string() + " --metric precomputed --strict").code == 2);

  const auto good = write_file("g.csv", "0,1,2\n1,0,1\n2,1,0\n");
  r = cli("check-metric -i " + good.string() + " --labels " + l.string() + " --metric precomputed --strict");
  CHECK(r.code == 0);
  r = cli("select -i " + good.string() + " --labels " + l.string() + " --metric precomputed -a fair-flow -c x=2");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["diversity"] == 2.0);
}

TEST_CASE("cli: bench") {
  Run r = cli("bench -a fair-swap -a fair-flow --instances 5 --no-timing");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("fair-flow") != std::string::npos);
  const std::string again = cli("bench -a fair-swap -a fair-flow --instances 5 --no-timing").out;
  CHECK(again == r.out);
  r = cli("bench -a fair-flow --timing-only --sizes 200,400 --k 6 --repetitions 1");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).dump().find("best_ms") != std::string::npos);
  CHECK(cli("bench -a fair-flow --layout spiral").code == 2);
}
