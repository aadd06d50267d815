// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lsc/dataset/manifest.hpp"
#include "lsc/dataset/split.hpp"
#include "lsc/metrics/scores.hpp"
#include "lsc/models/graph.hpp"
#include "lsc/nn/adam.hpp"
#include "lsc/nn/loss.hpp"
#include "lsc/training/config.hpp"
#include "lsc/training/task.hpp"

namespace lsc {

struct EpochRecord {
  Index epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;
  ChallengeScores val_scores;
};

// One flat JSON object, suitable as a JSONL line (no trailing newline).
std::string epoch_record_json(const EpochRecord& r);

// dB spectrogram of the chosen kind rendered as a 3x224x224 image.
Tensor<float> featurize_waveform(const Waveform& w, FeatureKind kind);

// Features for every task sample, output order = sample order regardless
// of worker count. Event samples are sliced from their parent recording.
std::vector<Tensor<float>> featurize_samples(const DatasetManifest& manifest,
                                             const std::vector<TaskSample>& samples,
                                             FeatureKind kind);

// One pass over `subset` (indices into features/targets) in seeded
// shuffle order, batched Adam updates, returns the sample-weighted mean
// batch loss. The final partial batch is kept.
double train_epoch(ModelGraph<float>& model, const std::vector<Tensor<float>>& features,
                   const std::vector<Index>& targets, const std::vector<Index>& subset,
                   const ClassWeights<float>& weights, Adam<float>& adam, float lr,
                   Index batch_size, std::mt19937& rng);

struct EvalOutput {
  double loss = 0.0;
  std::vector<Index> predictions;  // aligned with subset order
};

EvalOutput evaluate(ModelGraph<float>& model, const std::vector<Tensor<float>>& features,
                    const std::vector<Index>& targets, const std::vector<Index>& subset,
                    const ClassWeights<float>& weights, Index batch_size);

struct FitResult {
  std::unique_ptr<ModelGraph<float>> model;  // best-epoch state restored
  std::vector<EpochRecord> history;
  Index best_epoch = 0;
  SplitSpec split;
};

// Whole pipeline: task mapping, stratified split, featurization, weighted
// training with lr schedule and early stopping, best checkpoint by
// minimum validation loss.
FitResult fit(const DatasetManifest& manifest, const std::string& model_kind,
              const TrainConfig& cfg);

}  // namespace lsc
