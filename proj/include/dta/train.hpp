#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "dta/dataio.hpp"
#include "dta/metrics.hpp"
#include "dta/model.hpp"
#include "dta/similarity.hpp"

namespace dta::train {

/// Encoded sequences (and similarity rows, for Sim variants) for every
/// dataset entity, computed once and shared across runs.
class EntityFeatures {
 public:
  EntityFeatures(const data::InteractionDataset& dataset,
                 const model::ModelConfig& config,
                 const sim::SimilarityMatrix* drug_sim = nullptr,
                 const sim::SimilarityMatrix* target_sim = nullptr);

  model::BranchInput compound_input(std::size_t drug_index) const;
  model::BranchInput protein_input(std::size_t target_index) const;
  model::SimDims sim_dims() const;
  bool compound_is_cnn() const { return compound_cnn_; }
  bool protein_is_cnn() const { return protein_cnn_; }

 private:
  bool compound_cnn_;
  bool protein_cnn_;
  std::vector<enc::EncodedSequence> drug_codes_;
  std::vector<enc::EncodedSequence> target_codes_;
  const sim::SimilarityMatrix* drug_sim_;
  const sim::SimilarityMatrix* target_sim_;
};

struct TrainOptions {
  int jobs = 1;
  bool progress = false;  // per-epoch "epoch<TAB>loss<TAB>seconds" on stderr
};

struct TrainRun {
  model::ModelConfig config;
  std::size_t fold_id = 0;
  std::vector<double> epoch_losses;  // one mean training loss per epoch
  model::AffinityModel final_model;
  double wall_time_seconds = 0;
};

/// One training run: seeded shuffle each epoch, mini-batches of
/// config.batch_size (last partial batch kept), per-sample forward/backward,
/// one Adam step per batch. Deterministic for a fixed seed and jobs count;
/// jobs = 1 is the reference order.
TrainRun train_one(const data::InteractionDataset& dataset,
                   const EntityFeatures& features,
                   std::span<const std::size_t> train_indices,
                   const model::ModelConfig& config, std::uint64_t seed,
                   const TrainOptions& options = {});

/// Eval-mode predictions for the listed interactions.
metrics::PredictionBatch evaluate_on(const data::InteractionDataset& dataset,
                                     const EntityFeatures& features,
                                     const model::AffinityModel& model,
                                     std::span<const std::size_t> indices,
                                     int jobs = 1);

/// Five-fold cross-validation: for each fold, train on the other four and
/// score CI on the held-out fold.
metrics::FoldScores cross_validate(const data::InteractionDataset& dataset,
                                   const EntityFeatures& features,
                                   const data::FoldPlan& plan,
                                   const model::ModelConfig& config,
                                   const TrainOptions& options = {});

struct SearchSpace {
  std::vector<int> num_filters_options;
  std::vector<int> compound_filter_lengths;
  std::vector<int> protein_filter_lengths;

  static SearchSpace from_json_text(const std::string& text);
  static SearchSpace load(const std::filesystem::path& path);
};

struct GridCell {
  model::ModelConfig config;
  metrics::FoldScores cv_ci;
  std::size_t parameter_count = 0;
};

struct GridSearchResult {
  model::ModelConfig best;
  std::vector<GridCell> table;  // every evaluated combination, in order
};

/// Evaluates every combination in the space via cross_validate and returns
/// the config with the best mean CI; exact ties go to the combination with
/// fewer parameters.
GridSearchResult grid_search(const data::InteractionDataset& dataset,
                             const data::FoldPlan& plan,
                             const SearchSpace& space,
                             const model::ModelConfig& base_config,
                             const sim::SimilarityMatrix* drug_sim = nullptr,
                             const sim::SimilarityMatrix* target_sim = nullptr,
                             const TrainOptions& options = {});

struct FinalEvaluation {
  metrics::FoldScores ci;
  metrics::FoldScores mse;
};

/// The held-out-test protocol: five trainings, one per cross-validation
/// training split (validation parts unused), each evaluated on the test
/// part; reports mean and std of CI and MSE.
FinalEvaluation final_evaluation(const data::InteractionDataset& dataset,
                                 const EntityFeatures& features,
                                 const data::FoldPlan& plan,
                                 const model::ModelConfig& config,
                                 const TrainOptions& options = {});

/// Closed-form parameter count for a config (checked against the built
/// model in the tests).
std::size_t parameter_count_for(const model::ModelConfig& config,
                                model::SimDims sim_dims = {});

}  // namespace dta::train
