#include "dta/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "dta/error.hpp"
#include "dta/io_util.hpp"
#include "dta/rng.hpp"

namespace dta::train {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

EntityFeatures::EntityFeatures(const data::InteractionDataset& dataset,
                               const model::ModelConfig& config,
                               const sim::SimilarityMatrix* drug_sim,
                               const sim::SimilarityMatrix* target_sim)
    : compound_cnn_(config.variant == model::Variant::CnnCnn ||
                    config.variant == model::Variant::CnnSim),
      protein_cnn_(config.variant == model::Variant::CnnCnn ||
                   config.variant == model::Variant::SimCnn),
      drug_sim_(drug_sim),
      target_sim_(target_sim) {
  if (compound_cnn_) {
    drug_codes_.reserve(dataset.drugs.size());
    for (const auto& [id, smiles] : dataset.drugs) {
      try {
        drug_codes_.push_back(
            enc::encode(smiles, enc::smiles_vocabulary(),
                        static_cast<std::size_t>(config.smiles_max_len)));
      } catch (const std::exception& e) {
        throw DataError("drug '" + id + "': " + e.what());
      }
    }
  } else {
    if (!drug_sim_)
      throw ConfigError("variant " + model::variant_name(config.variant) +
                        " needs a drug similarity matrix");
    if (drug_sim_->size() != dataset.drugs.size())
      throw ConfigError("drug similarity matrix has " +
                        std::to_string(drug_sim_->size()) +
                        " entities, dataset has " +
                        std::to_string(dataset.drugs.size()));
  }
  if (protein_cnn_) {
    target_codes_.reserve(dataset.targets.size());
    for (const auto& [id, seq] : dataset.targets) {
      try {
        target_codes_.push_back(
            enc::encode(seq, enc::protein_vocabulary(),
                        static_cast<std::size_t>(config.protein_max_len)));
      } catch (const std::exception& e) {
        throw DataError("target '" + id + "': " + e.what());
      }
    }
  } else {
    if (!target_sim_)
      throw ConfigError("variant " + model::variant_name(config.variant) +
                        " needs a protein similarity matrix");
    if (target_sim_->size() != dataset.targets.size())
      throw ConfigError("protein similarity matrix has " +
                        std::to_string(target_sim_->size()) +
                        " entities, dataset has " +
                        std::to_string(dataset.targets.size()));
  }
}

model::BranchInput EntityFeatures::compound_input(std::size_t drug_index) const {
  model::BranchInput in;
  if (compound_cnn_)
    in.sequence = &drug_codes_[drug_index];
  else
    in.sim_row = std::span<const double>(
        drug_sim_->values.data() + drug_index * drug_sim_->size(),
        drug_sim_->size());
  return in;
}

model::BranchInput EntityFeatures::protein_input(std::size_t target_index) const {
  model::BranchInput in;
  if (protein_cnn_)
    in.sequence = &target_codes_[target_index];
  else
    in.sim_row = std::span<const double>(
        target_sim_->values.data() + target_index * target_sim_->size(),
        target_sim_->size());
  return in;
}

model::SimDims EntityFeatures::sim_dims() const {
  model::SimDims dims;
  if (!compound_cnn_) dims.compound = drug_sim_->size();
  if (!protein_cnn_) dims.protein = target_sim_->size();
  return dims;
}

TrainRun train_one(const data::InteractionDataset& dataset,
                   const EntityFeatures& features,
                   std::span<const std::size_t> train_indices,
                   const model::ModelConfig& config, std::uint64_t seed,
                   const TrainOptions& options) {
  config.validate();
  if (train_indices.empty()) throw ConfigError("train_one: no training indices");
  for (std::size_t idx : train_indices)
    if (idx >= dataset.interactions.size())
      throw ConfigError("train index out of range: " + std::to_string(idx));

  const auto start = Clock::now();
  TrainRun run;
  run.config = config;
  run.final_model = model::build_model(config, seed, features.sim_dims());

  const auto params = run.final_model.parameters();
  nn::AdamState adam(params, config.learning_rate);

  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
  const int jobs = std::max(1, options.jobs);
  std::vector<std::size_t> order(train_indices.begin(), train_indices.end());

  // Worker-private gradient buffers; flushed in worker order after each
  // batch so accumulation order is fixed for a given jobs count.
  std::vector<nn::GradScope> scopes(static_cast<std::size_t>(jobs));
  if (jobs > 1)
    for (auto& scope : scopes)
      for (const auto& p : params) scope.adopt(p.tensor);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto epoch_start = Clock::now();
    const std::uint64_t epoch_seed =
        mix_seed(seed, 0x9e0c + static_cast<std::uint64_t>(epoch));
    RngStream shuffle_rng(epoch_seed);
    shuffle_rng.shuffle(order);

    double epoch_sq_sum = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t pos = 0; pos < order.size(); pos += batch_size, ++batch_no) {
      const std::size_t n = std::min(batch_size, order.size() - pos);
      const double grad_scale = 2.0 / static_cast<double>(n);

      // Per-sample seeds fixed by position in the epoch, so dropout masks do
      // not depend on the thread layout.
      const auto sample_pass = [&](std::size_t offset) -> double {
        const std::size_t idx = order[pos + offset];
        const auto& it = dataset.interactions[idx];
        RngStream rng(mix_seed(epoch_seed, 0xd70 + pos + offset));
        nn::Tensor pred =
            forward_one(run.final_model, features.compound_input(it.drug),
                        features.protein_input(it.target), nn::Mode::Train,
                        &rng);
        const double diff = pred.value() - it.affinity;
        if (!std::isfinite(diff))
          throw NumericError("non-finite loss at epoch " +
                             std::to_string(epoch) + ", batch " +
                             std::to_string(batch_no));
        const double g = grad_scale * diff;
        nn::backward_with_seed(pred, std::span<const double>(&g, 1));
        return diff * diff;
      };

      if (jobs == 1) {
        for (std::size_t s = 0; s < n; ++s) epoch_sq_sum += sample_pass(s);
      } else {
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
        std::vector<double> worker_sums(workers, 0.0);
        std::vector<std::thread> threads;
        std::exception_ptr error;
        std::mutex error_mutex;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
          const std::size_t lo = w * chunk;
          const std::size_t hi = std::min(n, lo + chunk);
          if (lo >= hi) break;
          threads.emplace_back([&, w, lo, hi] {
            try {
              nn::GradScope::Activation act(scopes[w]);
              for (std::size_t s = lo; s < hi; ++s)
                worker_sums[w] += sample_pass(s);
            } catch (...) {
              std::lock_guard<std::mutex> lock(error_mutex);
              if (!error) error = std::current_exception();
            }
          });
        }
        for (auto& t : threads) t.join();
        if (error) std::rethrow_exception(error);
        for (std::size_t w = 0; w < workers; ++w) {
          scopes[w].flush();
          epoch_sq_sum += worker_sums[w];
        }
      }

      nn::adam_step(params, adam);
      run.final_model.zero_grads();
    }

    const double epoch_loss =
        epoch_sq_sum / static_cast<double>(order.size());
    run.epoch_losses.push_back(epoch_loss);
    if (options.progress)
      std::fprintf(stderr, "%d\t%.6f\t%.2f\n", epoch, epoch_loss,
                   seconds_since(epoch_start));
  }

  run.wall_time_seconds = seconds_since(start);
  return run;
}

metrics::PredictionBatch evaluate_on(const data::InteractionDataset& dataset,
                                     const EntityFeatures& features,
                                     const model::AffinityModel& model,
                                     std::span<const std::size_t> indices,
                                     int jobs) {
  std::vector<model::BranchInput> compounds, proteins;
  compounds.reserve(indices.size());
  proteins.reserve(indices.size());
  metrics::PredictionBatch batch;
  batch.actual.reserve(indices.size());
  for (std::size_t idx : indices) {
    const auto& it = dataset.interactions[idx];
    compounds.push_back(features.compound_input(it.drug));
    proteins.push_back(features.protein_input(it.target));
    batch.actual.push_back(it.affinity);
  }
  batch.predicted =
      predict_batch(model, compounds, proteins, nn::Mode::Eval, jobs);
  return batch;
}

metrics::FoldScores cross_validate(const data::InteractionDataset& dataset,
                                   const EntityFeatures& features,
                                   const data::FoldPlan& plan,
                                   const model::ModelConfig& config,
                                   const TrainOptions& options) {
  if (plan.train_folds.size() != 5)
    throw ConfigError("cross_validate expects 5 train folds");
  std::vector<double> fold_ci;
  for (std::size_t fold = 0; fold < plan.train_folds.size(); ++fold) {
    try {
      const auto train_idx = plan.train_without(fold);
      const TrainRun run = train_one(dataset, features, train_idx, config,
                                     mix_seed(config.seed, fold), options);
      const auto batch = evaluate_on(dataset, features, run.final_model,
                                     plan.train_folds[fold], options.jobs);
      fold_ci.push_back(metrics::concordance_index_fast(batch));
    } catch (const std::exception& e) {
      throw NumericError("fold " + std::to_string(fold) + ": " + e.what());
    }
  }
  return metrics::summarize_folds(std::move(fold_ci));
}

SearchSpace SearchSpace::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    SearchSpace s;
    s.num_filters_options = j.at("num_filters_options").get<std::vector<int>>();
    s.compound_filter_lengths =
        j.at("compound_filter_lengths").get<std::vector<int>>();
    s.protein_filter_lengths =
        j.at("protein_filter_lengths").get<std::vector<int>>();
    if (s.num_filters_options.empty() || s.compound_filter_lengths.empty() ||
        s.protein_filter_lengths.empty())
      throw ConfigError("search space lists must be non-empty");
    for (int v : s.num_filters_options)
      if (v < 1) throw ConfigError("filter counts must be positive");
    for (int v : s.compound_filter_lengths)
      if (v < 1) throw ConfigError("filter lengths must be positive");
    for (int v : s.protein_filter_lengths)
      if (v < 1) throw ConfigError("filter lengths must be positive");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("search space JSON error: ") + e.what());
  }
}

SearchSpace SearchSpace::load(const std::filesystem::path& path) {
  return from_json_text(io::read_file(path));
}

GridSearchResult grid_search(const data::InteractionDataset& dataset,
                             const data::FoldPlan& plan,
                             const SearchSpace& space,
                             const model::ModelConfig& base_config,
                             const sim::SimilarityMatrix* drug_sim,
                             const sim::SimilarityMatrix* target_sim,
                             const TrainOptions& options) {
  GridSearchResult result;
  bool have_best = false;
  double best_ci = 0.0;
  std::size_t best_params = 0;

  EntityFeatures features(dataset, base_config, drug_sim, target_sim);
  for (int filters : space.num_filters_options) {
    for (int ck : space.compound_filter_lengths) {
      for (int pk : space.protein_filter_lengths) {
        model::ModelConfig config = base_config;
        config.num_filters_base = filters;
        config.compound_filter_length = ck;
        config.protein_filter_length = pk;

        GridCell cell;
        cell.config = config;
        cell.parameter_count = parameter_count_for(config, features.sim_dims());
        cell.cv_ci = cross_validate(dataset, features, plan, config, options);
        result.table.push_back(cell);

        const bool better =
            !have_best || cell.cv_ci.mean > best_ci ||
            (cell.cv_ci.mean == best_ci && cell.parameter_count < best_params);
        if (better) {
          have_best = true;
          best_ci = cell.cv_ci.mean;
          best_params = cell.parameter_count;
          result.best = config;
        }
      }
    }
  }
  return result;
}

FinalEvaluation final_evaluation(const data::InteractionDataset& dataset,
                                 const EntityFeatures& features,
                                 const data::FoldPlan& plan,
                                 const model::ModelConfig& config,
                                 const TrainOptions& options) {
  if (plan.train_folds.size() != 5)
    throw ConfigError("final_evaluation expects 5 train folds");
  std::vector<double> ci_scores, mse_scores;
  for (std::size_t fold = 0; fold < plan.train_folds.size(); ++fold) {
    const auto train_idx = plan.train_without(fold);
    const TrainRun run = train_one(dataset, features, train_idx, config,
                                   mix_seed(config.seed, fold), options);
    const auto batch = evaluate_on(dataset, features, run.final_model,
                                   plan.test_indices, options.jobs);
    ci_scores.push_back(metrics::concordance_index_fast(batch));
    mse_scores.push_back(metrics::mse(batch));
  }
  return {metrics::summarize_folds(std::move(ci_scores)),
          metrics::summarize_folds(std::move(mse_scores))};
}

std::size_t parameter_count_for(const model::ModelConfig& config,
                                model::SimDims sim_dims) {
  const auto base = static_cast<std::size_t>(config.num_filters_base);
  const auto embed = static_cast<std::size_t>(config.embed_dim);
  const auto f1 = static_cast<std::size_t>(config.fc_sizes[0]);
  const auto f2 = static_cast<std::size_t>(config.fc_sizes[1]);
  const auto f3 = static_cast<std::size_t>(config.fc_sizes[2]);

  const auto cnn_branch = [&](std::size_t vocab, std::size_t k) {
    const std::size_t embed_params = (vocab + 1) * embed;
    const std::size_t conv1 = base * embed * k + base;
    const std::size_t conv2 = (2 * base) * base * k + 2 * base;
    const std::size_t conv3 = (3 * base) * (2 * base) * k + 3 * base;
    return embed_params + conv1 + conv2 + conv3;
  };

  std::size_t total = 0;
  std::size_t concat = 0;
  const bool compound_cnn = config.variant == model::Variant::CnnCnn ||
                            config.variant == model::Variant::CnnSim;
  const bool protein_cnn = config.variant == model::Variant::CnnCnn ||
                           config.variant == model::Variant::SimCnn;
  if (compound_cnn) {
    total += cnn_branch(enc::smiles_vocabulary().size(),
                        static_cast<std::size_t>(config.compound_filter_length));
    concat += 3 * base;
  } else {
    concat += sim_dims.compound;
  }
  if (protein_cnn) {
    total += cnn_branch(enc::protein_vocabulary().size(),
                        static_cast<std::size_t>(config.protein_filter_length));
    concat += 3 * base;
  } else {
    concat += sim_dims.protein;
  }
  total += f1 * concat + f1;
  total += f2 * f1 + f2;
  total += f3 * f2 + f3;
  total += f3 + 1;
  return total;
}

}  // namespace dta::train
