// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/training/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "lsc/dsp/image.hpp"
#include "lsc/dsp/mel.hpp"
#include "lsc/dsp/stft.hpp"
#include "lsc/io/wav.hpp"
#include "lsc/models/lightcnn.hpp"
#include "lsc/models/resnet18.hpp"
#include "lsc/training/schedule.hpp"
#include "lsc/training/weights.hpp"

namespace lsc {

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "stft") return FeatureKind::kStft;
  if (s == "mel") return FeatureKind::kMel;
  throw ValidationError("unknown feature kind '" + s + "', expected stft or mel");
}

std::string to_string(FeatureKind kind) {
  return kind == FeatureKind::kStft ? "stft" : "mel";
}

std::string epoch_record_json(const EpochRecord& r) {
  nlohmann::json j;
  j["epoch"] = r.epoch;
  j["lr"] = r.lr;
  j["train_loss"] = r.train_loss;
  j["val_loss"] = r.val_loss;
  j["val_se"] = r.val_scores.se;
  j["val_sp"] = r.val_scores.sp;
  j["val_as"] = r.val_scores.as_score;
  j["val_hs"] = r.val_scores.hs;
  j["val_score"] = r.val_scores.score;
  return j.dump();
}

Tensor<float> featurize_waveform(const Waveform& w, FeatureKind kind) {
  const StftConfig stft_cfg;
  Mat<double> values = kind == FeatureKind::kStft
                           ? stft_magnitude(w, stft_cfg).values
                           : mel_spectrogram(w, stft_cfg, MelConfig{}).values;
  return to_feature_image(to_decibels(values));
}

std::vector<Tensor<float>> featurize_samples(const DatasetManifest& manifest,
                                             const std::vector<TaskSample>& samples,
                                             FeatureKind kind) {
  std::map<std::string, const RecordingEntry*> by_id;
  for (const RecordingEntry& rec : manifest.recordings) by_id[rec.id] = &rec;

  std::vector<Tensor<float>> features(samples.size());
  parallel_for(static_cast<Index>(samples.size()), [&](Index b, Index e, int) {
    for (Index i = b; i < e; ++i) {
      const TaskSample& s = samples[static_cast<std::size_t>(i)];
      auto it = by_id.find(s.recording_id);
      if (it == by_id.end())
        throw ValidationError("featurize: unknown recording " + s.recording_id);
      const RecordingEntry& rec = *it->second;
      Waveform w = read_wav(manifest.audio_path(rec));
      if (s.event_index >= 0) {
        if (s.event_index >= static_cast<Index>(rec.events.size()))
          throw ValidationError("featurize: event index out of range for " + rec.id);
        const EventRecord& ev = rec.events[static_cast<std::size_t>(s.event_index)];
        if (ev.end > w.size())
          throw ValidationError("featurize: event past end of audio in " + rec.id);
        w = Waveform{w.samples.segment(ev.start, ev.end - ev.start), w.sample_rate};
      }
      features[static_cast<std::size_t>(i)] = featurize_waveform(w, kind);
    }
  });
  return features;
}

namespace {

Tensor<float> gather_batch(const std::vector<Tensor<float>>& features,
                           const std::vector<Index>& order, Index begin, Index end,
                           std::vector<Index>* batch_targets,
                           const std::vector<Index>& targets) {
  const std::vector<Index>& shape = features[0].shape;
  Tensor<float> batch({end - begin, shape[0], shape[1], shape[2]});
  const Index stride = shape[0] * shape[1] * shape[2];
  batch_targets->clear();
  for (Index i = begin; i < end; ++i) {
    const Index s = order[static_cast<std::size_t>(i)];
    const Tensor<float>& f = features[static_cast<std::size_t>(s)];
    if (f.shape != shape)
      throw ValidationError("batch: inconsistent feature shapes");
    batch.data.segment((i - begin) * stride, stride) = f.data;
    batch_targets->push_back(targets[static_cast<std::size_t>(s)]);
  }
  return batch;
}

}  // namespace

double train_epoch(ModelGraph<float>& model, const std::vector<Tensor<float>>& features,
                   const std::vector<Index>& targets, const std::vector<Index>& subset,
                   const ClassWeights<float>& weights, Adam<float>& adam, float lr,
                   Index batch_size, std::mt19937& rng) {
  if (subset.empty()) throw ValidationError("train_epoch: empty subset");
  model.set_mode(Mode::kTrain);

  std::vector<Index> order = subset;
  std::shuffle(order.begin(), order.end(), rng);

  const Index n = static_cast<Index>(order.size());
  double loss_sum = 0.0;
  std::vector<Index> batch_targets;
  for (Index begin = 0, batch_index = 0; begin < n; begin += batch_size, ++batch_index) {
    const Index end = std::min(n, begin + batch_size);
    Tensor<float> batch = gather_batch(features, order, begin, end, &batch_targets, targets);

    for (Parameter<float>* p : model.trainable()) {
      p->value.ensure_grad();
      p->value.zero_grad();
    }
    Tensor<float> logits = model.forward(batch);
    LossResult<float> loss = weighted_softmax_cross_entropy(logits, batch_targets, weights);
    if (!std::isfinite(static_cast<double>(loss.loss)))
      throw NumericError("train_epoch: non-finite loss " + std::to_string(loss.loss) +
                         " at batch " + std::to_string(batch_index));
    model.backward(loss.dlogits);
    adam.step(model.trainable(), lr);
    loss_sum += static_cast<double>(loss.loss) * static_cast<double>(end - begin);
  }
  return loss_sum / static_cast<double>(n);
}

EvalOutput evaluate(ModelGraph<float>& model, const std::vector<Tensor<float>>& features,
                    const std::vector<Index>& targets, const std::vector<Index>& subset,
                    const ClassWeights<float>& weights, Index batch_size) {
  if (subset.empty()) throw ValidationError("evaluate: empty subset");
  const Mode previous = model.mode();
  model.set_mode(Mode::kEval);

  EvalOutput out;
  const Index n = static_cast<Index>(subset.size());
  double loss_sum = 0.0;
  std::vector<Index> batch_targets;
  for (Index begin = 0; begin < n; begin += batch_size) {
    const Index end = std::min(n, begin + batch_size);
    Tensor<float> batch =
        gather_batch(features, subset, begin, end, &batch_targets, targets);
    Tensor<float> logits = model.forward(batch);
    LossResult<float> loss = weighted_softmax_cross_entropy(logits, batch_targets, weights);
    if (!std::isfinite(static_cast<double>(loss.loss)))
      throw NumericError("evaluate: non-finite loss");
    loss_sum += static_cast<double>(loss.loss) * static_cast<double>(end - begin);
    for (Index r = 0; r < logits.dim(0); ++r) {
      Index argmax = 0;
      logits.as_matrix(logits.dim(0), logits.dim(1)).row(r).maxCoeff(&argmax);
      out.predictions.push_back(argmax);
    }
  }
  out.loss = loss_sum / static_cast<double>(n);
  model.set_mode(previous);
  return out;
}

FitResult fit(const DatasetManifest& manifest, const std::string& model_kind,
              const TrainConfig& cfg) {
  cfg.validate();
  const std::vector<TaskSample> samples = collect_task_samples(manifest, cfg.task);
  const std::vector<std::string>& classes = task_classes(cfg.task);

  std::map<std::string, Index> class_index;
  for (std::size_t i = 0; i < classes.size(); ++i)
    class_index[classes[i]] = static_cast<Index>(i);

  std::vector<Index> targets;
  std::vector<std::pair<std::string, std::string>> split_items;
  std::map<std::string, Index> by_key;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    targets.push_back(class_index.at(samples[i].task_class));
    split_items.emplace_back(samples[i].key, samples[i].task_class);
    if (!by_key.emplace(samples[i].key, static_cast<Index>(i)).second)
      throw ValidationError("fit: duplicate sample key " + samples[i].key);
  }

  FitResult result;
  result.split = stratified_split(split_items, cfg.split_ratio, cfg.seed);
  std::vector<Index> train_idx, val_idx;
  for (const std::string& id : result.split.train_ids) train_idx.push_back(by_key.at(id));
  for (const std::string& id : result.split.val_ids) val_idx.push_back(by_key.at(id));
  if (val_idx.empty())
    throw ValidationError("fit: validation split is empty; add data or lower the ratio");

  std::vector<Index> counts(classes.size(), 0);
  for (Index i : train_idx) ++counts[static_cast<std::size_t>(targets[static_cast<std::size_t>(i)])];
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (counts[c] == 0)
      throw ValidationError("fit: class " + classes[c] + " absent from training split");

  const Vec<double> w = compute_class_weights(counts);
  ClassWeights<float> weights{w.cast<float>()};

  if (model_kind == "lightcnn") {
    LightCnnConfig mc;
    mc.num_classes = static_cast<Index>(classes.size());
    result.model = build_lightcnn<float>(mc, cfg.seed);
  } else if (model_kind == "resnet18") {
    ResNet18Config mc;
    mc.num_classes = static_cast<Index>(classes.size());
    result.model = build_resnet18<float>(mc, cfg.seed);
  } else {
    throw ValidationError("unknown model '" + model_kind +
                          "', expected lightcnn or resnet18");
  }

  const std::vector<Tensor<float>> features =
      featurize_samples(manifest, samples, cfg.feature_kind);

  Adam<float> adam;
  std::vector<double> val_losses;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vec<float>> best_state;
  for (Index epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const double lr = lr_at_epoch(cfg, epoch);
    std::mt19937 shuffle_rng(cfg.seed + static_cast<std::uint32_t>(epoch));
    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = lr;
    rec.train_loss = train_epoch(*result.model, features, targets, train_idx, weights,
                                 adam, static_cast<float>(lr), cfg.batch_size, shuffle_rng);

    const EvalOutput ev =
        evaluate(*result.model, features, targets, val_idx, weights, cfg.batch_size);
    rec.val_loss = ev.loss;
    std::vector<std::string> truth, predicted;
    for (std::size_t i = 0; i < val_idx.size(); ++i) {
      truth.push_back(classes[static_cast<std::size_t>(
          targets[static_cast<std::size_t>(val_idx[i])])]);
      predicted.push_back(classes[static_cast<std::size_t>(ev.predictions[i])]);
    }
    rec.val_scores =
        scores_from_confusion(confusion_from_predictions(truth, predicted, cfg.task),
                              cfg.task);
    result.history.push_back(rec);
    val_losses.push_back(ev.loss);

    if (ev.loss < best) {
      best = ev.loss;
      result.best_epoch = epoch;
      best_state.clear();
      for (Parameter<float>* p : result.model->state()) best_state.push_back(p->value.data);
    }
    if (should_stop_early(val_losses, cfg.patience)) break;
  }

  std::size_t k = 0;
  for (Parameter<float>* p : result.model->state()) p->value.data = best_state[k++];
  return result;
}

}  // namespace lsc
