// Copyright 2026 The metround Authors
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

#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef METROUND_CLI_PATH
#error "METROUND_CLI_PATH must point at the metround executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("metround_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// `script` may contain pipes; every "$CLI" is replaced by the binary path.
Run sh(std::string script) {
  const std::string cli = std::string("'") + METROUND_CLI_PATH + "'";
  for (std::size_t pos; (pos = script.find("$CLI")) != std::string::npos;) script.replace(pos, 4, cli);
  const fs::path err = scratch() / "stderr.txt";
  const std::string full = "cd '" + scratch().string() + "' && { " + script + " ; } 2>'" + err.string() + "'";
  Run r;
  FILE* pipe = ::popen(full.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("generate lbk piped into genround") {
  const auto r = sh("$CLI generate lbk --b 3 --k 2 | $CLI genround -");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["tool"] == "metround");
  CHECK(j["command"] == "genround");
  const double v = j["results"]["value"];
  CHECK(std::abs(v - 3.4190225827029095) < 1e-6);
  const double lo = j["results"]["bracket"][0];
  const double hi = j["results"]["bracket"][1];
  CHECK(hi - lo <= 1e-9);
  CHECK(j["input"]["digest"].get<std::string>().rfind("sha256:", 0) == 0);
}

TEST_CASE("generate ultrametric piped into genround") {
  const auto r = sh("$CLI generate ultrametric --n 8 --seed 7 | $CLI genround -");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["results"]["value"] == "infinite");
  CHECK(j["results"]["method"] == "ultrametric-shortcut");
}

TEST_CASE("invalid input exits 2 with a machine-readable error") {
  write(scratch() / "bad.csv", "0,1,1\n1,0,1\n1,1.5,0\n");
  const auto r = sh("$CLI validate bad.csv");
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  const auto e = json::parse(r.err);
  CHECK(e["error"] == "AsymmetricEntry");
  CHECK(e["indices"] == json::array({1, 2}));

  write(scratch() / "garbage.json", "{\"matrix\": [[0, 1], [1,");
  CHECK(sh("$CLI classify garbage.json").exit_code == 2);
  write(scratch() / "ragged.csv", "0,1\n1,0,1\n");
  CHECK(json::parse(sh("$CLI classify ragged.csv").err)["error"] == "NotSquare");
  CHECK(sh("$CLI classify does-not-exist.json").exit_code == 2);
}

TEST_CASE("usage and analysis errors") {
  CHECK(sh("$CLI").exit_code == 4);
  CHECK(sh("$CLI frobnicate x").exit_code == 4);
  CHECK(sh("$CLI negtype -").exit_code == 4);
  write(scratch() / "c4.json", R"({"matrix": [[0,1,2,1],[1,0,1,2],[2,1,0,1],[1,2,1,0]]})");
  CHECK(sh("$CLI roundness c4.json").exit_code == 4);
  CHECK(sh("$CLI roundness c4.json --p 2 --profile").exit_code == 4);
  CHECK(sh("$CLI generate lbk --b 0.5 --k 2").exit_code == 4);

  const auto e = sh("$CLI embed c4.json");
  CHECK(e.exit_code == 3);
  CHECK(json::parse(e.err)["error"] == "NotNegativeType");
  write(scratch() / "near.json", R"({"matrix": [[0,1,1],[1,0,1.000001],[1,1.000001,0]]})");
  const auto cap = sh("$CLI genround near.json");
  CHECK(cap.exit_code == 3);
  CHECK(json::parse(cap.err)["error"] == "CapReachedNonUltrametric");
  CHECK(sh("$CLI --help").exit_code == 0);
}

TEST_CASE("analysis subcommands on C4") {
  write(scratch() / "c4.csv", "a,b,c,d\n0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n");
  const auto cls = json::parse(sh("$CLI classify c4.csv").out)["results"];
  CHECK(cls["is_additive"] == false);
  CHECK(cls["additive_witness_labels"] == json::array({"a", "c", "b", "d"}));

  const auto neg = json::parse(sh("$CLI negtype c4.csv --p 1").out)["results"];
  CHECK(neg["status"] == "boundary");
  CHECK(neg["sanchez_invariant"]["singular"] == true);

  const auto pol = json::parse(sh("$CLI polygonal c4.csv").out)["results"];
  CHECK(pol["residual"].get<double>() < 1e-9);
  CHECK(pol["a_side"].size() == 2);

  const auto prof = json::parse(sh("$CLI roundness c4.csv --profile").out)["results"];
  CHECK(std::abs(prof["global_lower"].get<double>() - 1.0) < 1e-6);
  const auto chk = json::parse(sh("$CLI roundness c4.csv --p 2").out)["results"];
  CHECK(chk["holds"] == false);

  const auto emb = sh("$CLI embed c4.csv --p 1 --out coords.json");
  REQUIRE(emb.exit_code == 0);
  CHECK(json::parse(emb.out)["results"]["rank"] == 2);
  const auto coords = json::parse(slurp(scratch() / "coords.json"));
  CHECK(coords["coords"].size() == 4);
  CHECK(coords["labels"][0] == "a");
}

TEST_CASE("reports are deterministic and digests track the matrix only") {
  const auto g = sh("$CLI generate ultrametric --n 6 --seed 3 --out u.json");
  REQUIRE(g.exit_code == 0);
  CHECK(json::parse(g.out)["seed"] == 3);
  CHECK(json::parse(slurp(scratch() / "u.json"))["seed"] == 3);
  CHECK(sh("$CLI generate ultrametric --n 6 --seed 3").out == sh("$CLI generate ultrametric --n 6 --seed 3").out);
  const auto a = sh("$CLI genround u.json");
  const auto b = sh("$CLI genround u.json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  write(scratch() / "m1.json", R"({"labels": ["x","y"], "matrix": [[0,1.5],[1.5,0]]})");
  write(scratch() / "m2.csv", "p,q\n0,1.5\n1.5,0\n");
  write(scratch() / "m3.json", R"({"matrix": [[0,1.25],[1.25,0]]})");
  auto digest = [](const std::string& f) {
    return json::parse(sh("$CLI validate " + f).out)["input"]["digest"].get<std::string>();
  };
  CHECK(digest("m1.json") == digest("m2.csv"));
  CHECK(digest("m1.json") != digest("m3.json"));
}

TEST_CASE("17 significant digits in reports") {
  const auto r = sh("$CLI generate lbk-target --gr 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"z\": 1.7320508075688772") != std::string::npos);
  const auto j = json::parse(r.out);
  CHECK(j["generator"]["k"] == 3);
  CHECK(j["matrix"].size() == 4);
}

TEST_CASE("every generator output feeds every analysis subcommand") {
  write(scratch() / "tree.json", R"({"vertices": 6, "edges": [[0,1,1.0],[0,2,0.5],[0,3,1.25],[3,4,0.75],[3,5,1.0]]})");
  const char* gens[] = {"lbk --b 3 --k 2", "lbk-target --gr 2.5", "ultrametric --n 5 --seed 1", "tree --spec tree.json"};
  const char* cmds[] = {"validate", "classify", "negtype --p 1", "genround", "roundness --p 1.5",
                        "roundness --profile --grid-max 4", "embed --p 1", "polygonal"};
  for (const char* g : gens)
    for (const char* c : cmds) {
      const auto r = sh(std::string("$CLI generate ") + g + " | $CLI " + c + " -");
      INFO(g << " | " << c << "\n" << r.err);
      CHECK(r.exit_code == 0);
    }

  write(scratch() / "cyc.json", R"({"vertices": 3, "edges": [[0,1,1],[1,2,1],[2,0,1]]})");
  const auto bad = sh("$CLI generate tree --spec cyc.json");
  CHECK(bad.exit_code == 2);
  CHECK(json::parse(bad.err)["error"] == "CycleDetected");
}

TEST_CASE("tolerance override from the environment") {
  write(scratch() / "noisy.json", R"({"matrix": [[0,1,2.000001],[1,0,1],[2.000001,1,0]]})");
  CHECK(sh("$CLI validate noisy.json").exit_code == 2);
  CHECK(sh("METROUND_DEFAULT_TOL=1e-6 $CLI validate noisy.json").exit_code == 0);
  CHECK(sh("METROUND_DEFAULT_TOL=abc $CLI validate noisy.json").exit_code == 4);
}
