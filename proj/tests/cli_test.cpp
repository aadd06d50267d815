// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "lsc/cli/commands.hpp"
#include "lsc/io/wav.hpp"
#include "lsc/metrics/scores.hpp"
#include "support/oracles.hpp"

using namespace lsc;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"lsc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  // the cli prints summaries; keep test output clean
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return code;
}

int run_cli_capture(const std::vector<std::string>& args, std::string* out) {
  std::vector<const char*> argv = {"lsc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  *out = sink.str();
  return code;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string label_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string text = "id,label\n";
  for (const auto& [id, label] : rows) text += id + "," + label + "\n";
  return text;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"--bogus"}) == 1);
  CHECK(run_cli({"frobnicate"}) == 1);
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"train", "--manifest", "x.json"}) == 1);  // missing --out
  CHECK(run_cli({"score"}) == 1);                          // neither --all nor csvs
  test::TempDir dir("t");
  CHECK(run_cli({"eval", "--ckpt", "none", "--manifest", "none", "--out",
                 dir.path.string() + "/r.json", "--split", "bogus"}) == 1);
}

TEST_CASE("data errors exit with code 2") {
  test::TempDir dir("t");
  CHECK(run_cli({"train", "--manifest", dir.path.string() + "/missing.json", "--out",
                 dir.path.string() + "/m.lsnd"}) == 2);
  write_file(dir.path.string() + "/p.csv", label_csv({{"a", "ZZZ"}}));
  write_file(dir.path.string() + "/l.csv", label_csv({{"a", "N"}}));
  CHECK(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/p.csv",
                 "--labels", dir.path.string() + "/l.csv"}) == 2);
  // id sets must match
  write_file(dir.path.string() + "/p2.csv", label_csv({{"b", "N"}}));
  CHECK(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/p2.csv",
                 "--labels", dir.path.string() + "/l.csv"}) == 2);
  // duplicate ids
  write_file(dir.path.string() + "/dup.csv", label_csv({{"a", "N"}, {"a", "N"}}));
  CHECK(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/dup.csv",
                 "--labels", dir.path.string() + "/l.csv"}) == 2);
  // missing header
  write_file(dir.path.string() + "/nohdr.csv", "a,N\n");
  CHECK(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/nohdr.csv",
                 "--labels", dir.path.string() + "/l.csv"}) == 2);
}

TEST_CASE("score reproduces hand-computed reports") {
  test::TempDir dir("t");
  std::vector<std::pair<std::string, std::string>> truth, pred;
  for (int i = 0; i < 100; ++i) {
    const std::string nid = "n" + std::to_string(i);
    truth.emplace_back(nid, "N");
    pred.emplace_back(nid, i < 90 ? "N" : "Adventitious");
    const std::string aid = "a" + std::to_string(i);
    truth.emplace_back(aid, "Adventitious");
    pred.emplace_back(aid, i < 89 ? "Adventitious" : "N");
  }
  write_file(dir.path.string() + "/labels.csv", label_csv(truth));
  write_file(dir.path.string() + "/pred.csv", label_csv(pred));
  const std::string report = dir.path.string() + "/report.json";
  REQUIRE(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/pred.csv",
                   "--labels", dir.path.string() + "/labels.csv", "--out", report}) == 0);

  const nlohmann::json j = nlohmann::json::parse(slurp(report));
  CHECK(j.at("task").get<std::string>() == "2-1");
  CHECK(j.at("se").get<double>() == doctest::Approx(0.89).epsilon(1e-12));
  CHECK(j.at("sp").get<double>() == doctest::Approx(0.90).epsilon(1e-12));
  CHECK(std::abs(j.at("as").get<double>() - 0.89) <= 0.005 + 1e-9);
  CHECK(std::abs(j.at("hs").get<double>() - 0.89) <= 0.005 + 1e-9);

  // row order in the csv files must not matter
  std::reverse(pred.begin(), pred.end());
  write_file(dir.path.string() + "/pred_rev.csv", label_csv(pred));
  const std::string report2 = dir.path.string() + "/report2.json";
  REQUIRE(run_cli({"score", "--task", "2-1", "--predictions",
                   dir.path.string() + "/pred_rev.csv", "--labels", dir.path.string() + "/labels.csv",
                   "--out", report2}) == 0);
  CHECK(slurp(report2) == slurp(report));

  // perfect predictions score 1.0 across the board
  write_file(dir.path.string() + "/perfect.csv", label_csv(truth));
  const std::string report3 = dir.path.string() + "/report3.json";
  REQUIRE(run_cli({"score", "--task", "2-1", "--predictions", dir.path.string() + "/perfect.csv",
                   "--labels", dir.path.string() + "/labels.csv", "--out", report3}) == 0);
  const nlohmann::json p = nlohmann::json::parse(slurp(report3));
  CHECK(p.at("se").get<double>() == 1.0);
  CHECK(p.at("sp").get<double>() == 1.0);
  CHECK(p.at("score").get<double>() == 1.0);
}

TEST_CASE("score --all combines four task reports") {
  test::TempDir dir("t");
  std::vector<std::string> reports;
  for (Task t : kAllTasks) {
    const std::string path = dir.path.string() + "/" + task_id(t) + ".json";
    write_file(path, score_report_json(t, aggregate(1.0, 1.0)));
    reports.push_back(path);
  }
  std::string out;
  REQUIRE(run_cli_capture({"score", "--all", reports[0], reports[1], reports[2],
                           reports[3]},
                          &out) == 0);
  CHECK(out.find("Total Score: 1.000000") != std::string::npos);

  // duplicate task reports are rejected
  CHECK(run_cli({"score", "--all", reports[0], reports[0], reports[2], reports[3]}) ==
        2);
  // --all wants exactly four files
  CHECK(run_cli({"score", "--all", reports[0], reports[1]}) != 0);
}

TEST_CASE("synth is deterministic and export-png renders spectrograms") {
  test::TempDir dir("t");
  std::string out;
  REQUIRE(run_cli_capture({"synth", "--out", dir.path.string() + "/a", "--n-per-class", "1",
                           "--seed", "9", "--level", "recording"},
                          &out) == 0);
  CHECK(out.find("manifest.json") != std::string::npos);
  REQUIRE(run_cli({"synth", "--out", dir.path.string() + "/b", "--n-per-class", "1", "--seed",
                   "9", "--level", "recording"}) == 0);
  CHECK(slurp(dir.path.string() + "/a/manifest.json") == slurp(dir.path.string() + "/b/manifest.json"));

  const nlohmann::json m = nlohmann::json::parse(slurp(dir.path.string() + "/a/manifest.json"));
  const std::string wav =
      dir.path.string() + "/a/" + m.at("recordings")[0].at("path").get<std::string>();
  const std::string wav_b =
      dir.path.string() + "/b/" + m.at("recordings")[0].at("path").get<std::string>();
  CHECK(slurp(wav) == slurp(wav_b));

  const std::string png = dir.path.string() + "/spec.png";
  REQUIRE(run_cli({"export-png", "--wav", wav, "--features", "mel", "--out", png}) == 0);
  const std::string bytes = slurp(png);
  REQUIRE(bytes.size() > 8);
  CHECK(bytes.substr(1, 3) == "PNG");

  const std::string png2 = dir.path.string() + "/spec2.png";
  REQUIRE(run_cli({"export-png", "--wav", wav, "--features", "mel", "--out", png2}) == 0);
  CHECK(slurp(png2) == bytes);

  const std::string img = dir.path.string() + "/img.png";
  REQUIRE(run_cli({"export-png", "--wav", wav, "--features", "stft", "--feature-image",
                   "--out", img}) == 0);
  CHECK(slurp(img).substr(1, 3) == "PNG");
  CHECK(slurp(img) != bytes);

  CHECK(run_cli({"export-png", "--wav", dir.path.string() + "/missing.wav", "--out",
                 dir.path.string() + "/x.png"}) == 2);
}

TEST_CASE("train, eval and score agree end to end") {
  test::TempDir dir("t");
  REQUIRE(run_cli({"synth", "--out", dir.path.string() + "/data", "--n-per-class", "2",
                   "--seed", "4", "--level", "recording"}) == 0);
  const std::string manifest = dir.path.string() + "/data/manifest.json";
  const std::string ckpt = dir.path.string() + "/model.lsnd";

  std::string train_out;
  REQUIRE(run_cli_capture({"train", "--manifest", manifest, "--task", "2-1", "--model",
                           "lightcnn", "--features", "stft", "--seed", "1",
                           "--max-epochs", "1", "--split-ratio", "0.5", "--out", ckpt},
                          &train_out) == 0);
  CHECK(train_out.find("best epoch") != std::string::npos);
  CHECK(slurp(ckpt).substr(0, 4) == "LSND");
  // default history path sits next to the checkpoint
  const std::string history = slurp(ckpt + ".history.jsonl");
  CHECK(!history.empty());
  CHECK(nlohmann::json::parse(history.substr(0, history.find('\n'))).contains("val_loss"));

  const std::string report = dir.path.string() + "/report.json";
  const std::string pred = dir.path.string() + "/pred.csv";
  const std::string labels = dir.path.string() + "/labels.csv";
  REQUIRE(run_cli({"eval", "--ckpt", ckpt, "--manifest", manifest, "--task", "2-1",
                   "--features", "stft", "--split", "val", "--seed", "1",
                   "--split-ratio", "0.5", "--out", report, "--predictions", pred,
                   "--labels-out", labels}) == 0);
  const nlohmann::json rj = nlohmann::json::parse(slurp(report));
  CHECK(rj.at("task").get<std::string>() == "2-1");

  // rescoring the exported csv pair reproduces the eval report exactly
  const std::string rescored = dir.path.string() + "/rescored.json";
  REQUIRE(run_cli({"score", "--task", "2-1", "--predictions", pred, "--labels", labels,
                   "--out", rescored}) == 0);
  CHECK(slurp(rescored) == slurp(report));

  // the checkpoint kind must match the class count of the task
  CHECK(run_cli({"eval", "--ckpt", ckpt, "--manifest", manifest, "--task", "2-2",
                 "--out", dir.path.string() + "/bad.json"}) == 2);
}
