#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dta::data {

struct Interaction {
  std::size_t drug;    // index into drugs
  std::size_t target;  // index into targets
  double affinity;
};

struct InteractionDataset {
  std::vector<std::pair<std::string, std::string>> drugs;    // (id, SMILES)
  std::vector<std::pair<std::string, std::string>> targets;  // (id, sequence)
  std::vector<Interaction> interactions;

  std::size_t find_drug(const std::string& id) const;
  std::size_t find_target(const std::string& id) const;
};

/// Loads ligands.tsv / proteins.tsv / affinities.tsv from a directory and
/// validates cross-references. Affinity values are taken verbatim; apply
/// pkd_transform / kiba_transform afterwards as appropriate.
InteractionDataset load_dataset(const std::filesystem::path& directory);

/// pKd = -log10(Kd / 1e9), Kd in nanomolar.
double pkd_transform(double kd_nanomolar);

/// Negate all scores, then shift so the minimum is exactly 0. Pairwise
/// differences satisfy out_i - out_j == s_j - s_i.
std::vector<double> kiba_transform(const std::vector<double>& scores);

/// Applies a transform to every interaction in place.
enum class AffinityTransform { None, Pkd, Kiba };
AffinityTransform transform_from_name(const std::string& name);
void apply_transform(InteractionDataset& ds, AffinityTransform t);

/// Six near-equal parts of the interaction index set: part 0 is the held-out
/// test set, parts 1-5 are the cross-validation folds.
struct FoldPlan {
  std::uint64_t seed = 0;
  std::vector<std::size_t> test_indices;
  std::vector<std::vector<std::size_t>> train_folds;  // exactly 5

  std::size_t total() const;
  std::vector<std::size_t> train_union() const;
  /// All train folds except `held_out` (0-based fold number).
  std::vector<std::size_t> train_without(std::size_t held_out) const;
};

FoldPlan make_fold_plan(const InteractionDataset& dataset, std::uint64_t seed);

void save_fold_plan(const FoldPlan& plan, const std::filesystem::path& path);
FoldPlan load_fold_plan(const std::filesystem::path& path);

}  // namespace dta::data
