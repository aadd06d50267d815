// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/cli/commands.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lsc/common.hpp"
#include "lsc/dataset/manifest.hpp"
#include "lsc/dataset/split.hpp"
#include "lsc/dataset/synth.hpp"
#include "lsc/dsp/image.hpp"
#include "lsc/dsp/mel.hpp"
#include "lsc/dsp/stft.hpp"
#include "lsc/io/png.hpp"
#include "lsc/io/wav.hpp"
#include "lsc/metrics/scores.hpp"
#include "lsc/models/checkpoint.hpp"
#include "lsc/models/lightcnn.hpp"
#include "lsc/models/resnet18.hpp"
#include "lsc/training/fit.hpp"

namespace lsc::cli {
namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.good()) throw ValidationError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// id,label rows keyed by id. Header required, ids unique, row order free.
std::map<std::string, std::string> read_label_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty csv: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,label")
    throw ValidationError(path.string() + ": expected header 'id,label', got '" +
                          line + "'");
  std::map<std::string, std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == line.size())
      throw ValidationError(path.string() + ": bad row '" + line + "'");
    if (!rows.emplace(line.substr(0, comma), line.substr(comma + 1)).second)
      throw ValidationError(path.string() + ": duplicate id " + line.substr(0, comma));
  }
  return rows;
}

std::string label_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string text = "id,label\n";
  for (const auto& [id, label] : rows) text += id + "," + label + "\n";
  return text;
}

struct SynthArgs {
  std::string out;
  Index n_per_class = 2;
  std::uint32_t seed = 0;
  std::string level = "recording";
};

void cmd_synth(const SynthArgs& a) {
  synth_generate(a.out, a.n_per_class, a.seed, synth_level_from_string(a.level));
  std::cout << (fs::path(a.out) / "manifest.json").string() << "\n";
}

struct TrainArgs {
  std::string manifest;
  std::string task = "2-1";
  std::string model = "lightcnn";
  std::string features = "stft";
  std::string out;
  std::string history;
  TrainConfig cfg;
};

void cmd_train(const TrainArgs& a) {
  TrainConfig cfg = a.cfg;
  cfg.task = task_from_id(a.task);
  cfg.feature_kind = feature_kind_from_string(a.features);

  DatasetManifest manifest = load_manifest(a.manifest);
  if (!task_event_level(cfg.task)) manifest = filter_poor_quality(manifest);
  FitResult r = fit(manifest, a.model, cfg);
  save_checkpoint(*r.model, a.out);

  std::string history;
  for (const EpochRecord& rec : r.history) history += epoch_record_json(rec) + "\n";
  const std::string history_path = a.history.empty() ? a.out + ".history.jsonl" : a.history;
  write_text(history_path, history);

  const EpochRecord& best = r.history[static_cast<std::size_t>(r.best_epoch)];
  std::cout << "best epoch " << best.epoch << " val_loss " << best.val_loss
            << " val_score " << best.val_scores.score << "\n"
            << a.out << "\n";
}

struct EvalArgs {
  std::string ckpt;
  std::string manifest;
  std::string task = "2-1";
  std::string features = "stft";
  std::string out;
  std::string predictions;
  std::string labels_out;
  std::string split = "all";
  std::uint32_t seed = 0;
  double split_ratio = 0.9;
  Index batch_size = 32;
};

// The archive itself tells the model apart: ResNet entries live under
// layer1..layer4, LightCNN has none of those.
bool archive_is_resnet(const std::vector<ArchiveEntry>& entries) {
  for (const ArchiveEntry& e : entries)
    if (e.name.rfind("layer", 0) == 0) return true;
  return false;
}

void cmd_eval(const EvalArgs& a) {
  const Task task = task_from_id(a.task);
  const std::vector<std::string>& classes = task_classes(task);
  const Index num_classes = static_cast<Index>(classes.size());

  const std::vector<ArchiveEntry> entries = read_archive(a.ckpt);
  const bool resnet = archive_is_resnet(entries);
  const std::string head = resnet ? "head.fc.weight" : "fc2.weight";
  for (const ArchiveEntry& e : entries)
    if (e.name == head && (e.shape.size() != 2 || e.shape[1] != num_classes))
      throw ValidationError("checkpoint head " + head + " is for " +
                            std::to_string(e.shape.empty() ? 0 : e.shape.back()) +
                            " classes but task " + a.task + " has " +
                            std::to_string(num_classes));

  std::unique_ptr<ModelGraph<float>> model;
  if (resnet) {
    ResNet18Config cfg;
    cfg.num_classes = num_classes;
    model = build_resnet18<float>(cfg, 0);
  } else {
    LightCnnConfig cfg;
    cfg.num_classes = num_classes;
    model = build_lightcnn<float>(cfg, 0);
  }
  load_checkpoint(a.ckpt, *model);

  DatasetManifest manifest = load_manifest(a.manifest);
  if (!task_event_level(task)) manifest = filter_poor_quality(manifest);
  const std::vector<TaskSample> samples = collect_task_samples(manifest, task);

  std::vector<TaskSample> chosen;
  if (a.split == "all") {
    chosen = samples;
  } else {
    std::map<std::string, const TaskSample*> by_key;
    std::vector<std::pair<std::string, std::string>> items;
    for (const TaskSample& s : samples) {
      by_key[s.key] = &s;
      items.emplace_back(s.key, s.task_class);
    }
    const SplitSpec spec = stratified_split(items, a.split_ratio, a.seed);
    const std::vector<std::string>& ids =
        a.split == "train" ? spec.train_ids : spec.val_ids;
    for (const std::string& id : ids) chosen.push_back(*by_key.at(id));
  }
  if (chosen.empty()) throw ValidationError("eval: no samples selected");

  std::map<std::string, Index> class_index;
  for (Index i = 0; i < num_classes; ++i) class_index[classes[static_cast<std::size_t>(i)]] = i;
  std::vector<Index> targets;
  for (const TaskSample& s : chosen) targets.push_back(class_index.at(s.task_class));

  const std::vector<Tensor<float>> features =
      featurize_samples(manifest, chosen, feature_kind_from_string(a.features));
  std::vector<Index> subset(chosen.size());
  std::iota(subset.begin(), subset.end(), Index(0));
  const ClassWeights<float> uniform{Vec<float>::Ones(num_classes)};
  const EvalOutput ev =
      evaluate(*model, features, targets, subset, uniform, a.batch_size);

  std::vector<std::string> truth, predicted;
  std::vector<std::pair<std::string, std::string>> pred_rows, truth_rows;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    truth.push_back(chosen[i].task_class);
    predicted.push_back(classes[static_cast<std::size_t>(ev.predictions[i])]);
    pred_rows.emplace_back(chosen[i].key, predicted.back());
    truth_rows.emplace_back(chosen[i].key, chosen[i].task_class);
  }
  if (!a.predictions.empty()) write_text(a.predictions, label_csv(pred_rows));
  if (!a.labels_out.empty()) write_text(a.labels_out, label_csv(truth_rows));

  const ChallengeScores scores =
      scores_from_confusion(confusion_from_predictions(truth, predicted, task), task);
  const std::string report = score_report_json(task, scores);
  write_text(a.out, report + "\n");
  std::cout << report << "\n";
}

struct ScoreArgs {
  std::string predictions;
  std::string labels;
  std::string task = "2-1";
  std::string out;
  std::vector<std::string> all;
};

void cmd_score(const ScoreArgs& a) {
  if (!a.all.empty()) {
    if (a.all.size() != 4)
      throw ValidationError("score --all needs exactly four report files, got " +
                            std::to_string(a.all.size()));
    std::map<Task, double> per_task;
    for (const std::string& path : a.all) {
      Task t;
      const ChallengeScores s = score_report_from_json(read_text(path), &t);
      if (!per_task.emplace(t, s.score).second)
        throw ValidationError("score --all: duplicate report for task " + task_id(t));
      std::cout << task_id(t) << " score " << s.score << "\n";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(6);
    line << "Total Score: " << total_score(per_task) << "\n";
    std::cout << line.str();
    return;
  }

  const Task task = task_from_id(a.task);
  const std::map<std::string, std::string> predicted = read_label_csv(a.predictions);
  const std::map<std::string, std::string> truth = read_label_csv(a.labels);
  for (const auto& [id, label] : truth)
    if (!predicted.count(id))
      throw ValidationError("id " + id + " has a label but no prediction");
  for (const auto& [id, label] : predicted)
    if (!truth.count(id)) throw ValidationError("id " + id + " has no label");

  std::vector<std::string> true_labels, pred_labels;
  for (const auto& [id, label] : truth) {
    true_labels.push_back(label);
    pred_labels.push_back(predicted.at(id));
  }
  const ChallengeScores scores = scores_from_confusion(
      confusion_from_predictions(true_labels, pred_labels, task), task);
  const std::string report = score_report_json(task, scores);
  if (!a.out.empty()) write_text(a.out, report + "\n");
  std::cout << report << "\n";
}

struct PngArgs {
  std::string wav;
  std::string features = "stft";
  std::string out;
  bool feature_image = false;
};

void cmd_export_png(const PngArgs& a) {
  const Waveform w = read_wav(a.wav);
  const StftConfig stft_cfg;
  const Mat<double> values = a.features == "stft"
                                 ? stft_magnitude(w, stft_cfg).values
                                 : mel_spectrogram(w, stft_cfg, MelConfig{}).values;
  Mat<double> db = to_decibels(values);
  if (a.feature_image) {
    const Tensor<float> img = to_feature_image(db);
    const Index s = kFeatureImageSize;
    db = Eigen::Map<const Tensor<float>::RowMat>(img.data.data(), s, s).cast<double>();
  }
  write_png_gray(a.out, matrix_to_gray(db));
  std::cout << a.out << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Respiratory sound classification pipeline"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  SynthArgs synth;
  CLI::App* s = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
  s->add_option("--out", synth.out, "Output directory")->required();
  s->add_option("--n-per-class", synth.n_per_class, "Recordings per class");
  s->add_option("--seed", synth.seed, "Corpus seed");
  s->add_option("--level", synth.level, "Label level")
      ->check(CLI::IsMember({"event", "recording"}));
  s->callback([&] { set_num_workers(jobs); cmd_synth(synth); });

  TrainArgs train;
  CLI::App* t = app.add_subcommand("train", "Train a model on a manifest");
  t->add_option("--manifest", train.manifest, "Dataset manifest JSON")->required();
  t->add_option("--task", train.task, "Challenge task")
      ->check(CLI::IsMember({"1-1", "1-2", "2-1", "2-2"}));
  t->add_option("--model", train.model, "Model graph")
      ->check(CLI::IsMember({"lightcnn", "resnet18"}));
  t->add_option("--features", train.features, "Feature kind")
      ->check(CLI::IsMember({"stft", "mel"}));
  t->add_option("--out", train.out, "Checkpoint output path")->required();
  t->add_option("--history", train.history,
                "History JSONL path (default: <out>.history.jsonl)");
  t->add_option("--seed", train.cfg.seed, "Training seed");
  t->add_option("--lr", train.cfg.initial_lr, "Initial learning rate");
  t->add_option("--lr-decay-factor", train.cfg.lr_decay_factor, "Decay multiplier");
  t->add_option("--lr-decay-every", train.cfg.lr_decay_every, "Epochs per decay");
  t->add_option("--batch-size", train.cfg.batch_size, "Batch size");
  t->add_option("--patience", train.cfg.patience, "Early-stopping patience");
  t->add_option("--max-epochs", train.cfg.max_epochs, "Epoch cap");
  t->add_option("--split-ratio", train.cfg.split_ratio, "Train fraction per class");
  t->callback([&] { set_num_workers(jobs); cmd_train(train); });

  EvalArgs eval;
  CLI::App* e = app.add_subcommand("eval", "Evaluate a checkpoint on a manifest");
  e->add_option("--ckpt", eval.ckpt, "Checkpoint archive")->required();
  e->add_option("--manifest", eval.manifest, "Dataset manifest JSON")->required();
  e->add_option("--task", eval.task, "Challenge task")
      ->check(CLI::IsMember({"1-1", "1-2", "2-1", "2-2"}));
  e->add_option("--features", eval.features, "Feature kind")
      ->check(CLI::IsMember({"stft", "mel"}));
  e->add_option("--out", eval.out, "Score report JSON path")->required();
  e->add_option("--predictions", eval.predictions, "Predictions CSV path");
  e->add_option("--labels-out", eval.labels_out, "Ground-truth CSV path");
  e->add_option("--split", eval.split, "Subset to evaluate")
      ->check(CLI::IsMember({"all", "train", "val"}));
  e->add_option("--seed", eval.seed, "Split seed (must match training)");
  e->add_option("--split-ratio", eval.split_ratio, "Train fraction per class");
  e->add_option("--batch-size", eval.batch_size, "Batch size");
  e->callback([&] { set_num_workers(jobs); cmd_eval(eval); });

  ScoreArgs score;
  CLI::App* c = app.add_subcommand("score", "Score predictions against labels");
  c->add_option("--predictions", score.predictions, "Predictions CSV");
  c->add_option("--labels", score.labels, "Ground-truth CSV");
  c->add_option("--task", score.task, "Challenge task")
      ->check(CLI::IsMember({"1-1", "1-2", "2-1", "2-2"}));
  c->add_option("--out", score.out, "Report JSON path");
  c->add_option("--all", score.all, "Four per-task report JSONs; prints Total Score")
      ->expected(4);
  c->callback([&] {
    if (score.all.empty() && (score.predictions.empty() || score.labels.empty()))
      throw CLI::ValidationError(
          "score", "either --all or both --predictions and --labels are required");
    cmd_score(score);
  });

  PngArgs png;
  CLI::App* p = app.add_subcommand("export-png", "Render a spectrogram to PNG");
  p->add_option("--wav", png.wav, "Input WAV")->required();
  p->add_option("--features", png.features, "Feature kind")
      ->check(CLI::IsMember({"stft", "mel"}));
  p->add_option("--out", png.out, "Output PNG path")->required();
  p->add_flag("--feature-image", png.feature_image,
              "Export the resized model input instead of the raw spectrogram");
  p->callback([&] { cmd_export_png(png); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  } catch (const NumericError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}

}  // namespace lsc::cli
