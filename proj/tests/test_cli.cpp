// Copyright 2026 The iqpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest/doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("iqpsim_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + IQPSIM_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("threshold") {
  const auto d = scratch("threshold");
  REQUIRE(cli("threshold", d / "out.txt") == 0);
  const auto j = read_json(d / "out.txt");
  CHECK(std::abs(j["eta0"].get<double>() - 0.01169) < 1e-4);
  CHECK(j["exceeds_rational"] == true);
  CHECK(cli("threshold --epsilon0 0.5", d / "bad.txt") == 1);
}

TEST_CASE("sample at n=3 matches the ideal distribution") {
  const auto d = scratch("sample");
  {
    std::ofstream(d / "a.json") << R"({"n":3,"cubic":[[1,2,3]]})";
  }
  const std::string args = "sample --poly \"" + (d / "a.json").string() + "\" --shots 100000 --seed 7 --out \"" + d.string() + "\"";
  REQUIRE(cli(args, d / "log.txt") == 0);
  const auto summary = read_json(d / "summary.json");
  CHECK(summary["shots"] == 100000);
  CHECK(summary["l1"].get<double>() <= 3 * std::sqrt(8.0 / 1e5));

  std::ifstream in(d / "transcripts.jsonl");
  std::string line;
  std::getline(in, line);
  CHECK(json::parse(line).contains("run_config"));
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 100000);

  const std::string first = slurp(d / "transcripts.jsonl"), hist = slurp(d / "histogram.csv"), sum = slurp(d / "summary.json");
  REQUIRE(cli(args + " --workers 3", d / "log2.txt") == 0);
  // The worker count is part of the recorded config; the records are not.
  const auto strip = [](const std::string& s) { return s.substr(s.find('\n')); };
  CHECK(strip(slurp(d / "transcripts.jsonl")) == strip(first));
  REQUIRE(cli(args, d / "log3.txt") == 0);
  CHECK(slurp(d / "transcripts.jsonl") == first);
  CHECK(slurp(d / "histogram.csv") == hist);
  CHECK(slurp(d / "summary.json") == sum);
}

TEST_CASE("sample edge cases") {
  const auto d = scratch("edge");
  CHECK(cli("sample --n 3 --shots 0 --out \"" + d.string() + "\"", d / "log.txt") == 0);
  CHECK(read_json(d / "summary.json")["shots"] == 0);
  CHECK(cli("sample --n 2 --shots 5 --out \"" + d.string() + "\"", d / "log.txt") == 1);
  CHECK(cli("sample --n 3 --shots 5 --noise-flip 1.5 --out \"" + d.string() + "\"", d / "log.txt") == 1);
  CHECK(cli("sample --poly /nonexistent.json --out \"" + d.string() + "\"", d / "log.txt") == 1);
  CHECK(cli("frobnicate", d / "log.txt") == 1);
}

TEST_CASE("verify exit codes") {
  const auto d = scratch("verify");
  const std::string out = " --out \"" + d.string() + "\"";
  CHECK(cli("verify --n 4 --mu 20 --seed 3" + out, d / "log.txt") == 0);
  const auto dec = read_json(d / "decision.json")["decision"];
  CHECK(dec["verdict"] == "accept");
  CHECK(dec["N"] == 320);

  CHECK(cli("certify --in \"" + (d / "transcripts.jsonl").string() + "\" --mu 20" + out, d / "log.txt") == 0);
  CHECK(cli("certify --in \"" + (d / "transcripts.jsonl").string() + "\" --mu 21" + out, d / "log.txt") == 3);

  CHECK(cli("verify --n 6 --mu 100 --noise-flip 0.05 --seed 3" + out, d / "log.txt") == 2);
  CHECK(read_json(d / "decision.json")["decision"]["verdict"] == "reject");
  CHECK(cli("verify --n 4 --mu 0.5" + out, d / "log.txt") == 3);
  CHECK(cli("verify --n 4 --mu -1" + out, d / "log.txt") == 1);
}

TEST_CASE("selftest") {
  const auto d = scratch("selftest");
  CHECK(cli("selftest", d / "log.txt") == 0);
  CHECK(slurp(d / "log.txt").find("selftest passed") != std::string::npos);
  // Without triple rotation some byproduct coefficient is never produced.
  CHECK(cli("selftest --no-rotation", d / "log2.txt") == 1);
  CHECK(slurp(d / "log2.txt").find("FAIL byproduct uniformity") != std::string::npos);
}

TEST_CASE("gadget-oracle") {
  const auto d = scratch("oracle");
  REQUIRE(cli("gadget-oracle --out \"" + d.string() + "\"", d / "log.txt") == 0);
  const auto j = read_json(d / "gadget_table.json");
  CHECK(j["wire_oracle"]["ok"] == true);
  CHECK(j["wire_oracle"]["branches"].size() >= 4);
}
