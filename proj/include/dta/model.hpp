#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dta/adam.hpp"
#include "dta/encoding.hpp"
#include "dta/ops.hpp"

namespace dta::model {

/// Which encoder feeds each branch; first component is the compound branch,
/// second the protein branch. A Sim branch bypasses the CNN and feeds the
/// entity's similarity row straight into the concatenation.
enum class Variant { CnnCnn, CnnSim, SimCnn, SimSim };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ModelConfig {
  Variant variant = Variant::CnnCnn;
  int num_filters_base = 32;
  int compound_filter_length = 4;
  int protein_filter_length = 8;
  int embed_dim = 128;
  int smiles_max_len = 85;
  int protein_max_len = 1200;
  std::array<int, 3> fc_sizes = {1024, 1024, 512};
  double dropout_rate = 0.1;
  int epochs = 100;
  int batch_size = 256;
  double learning_rate = 0.001;
  std::uint64_t seed = 0;

  void validate() const;
  std::string to_json_text(int indent = 2) const;
  static ModelConfig from_json_text(const std::string& text);
  static ModelConfig load(const std::filesystem::path& path);
};

/// Input for one branch of one sample: an encoded sequence for a CNN branch
/// or a similarity row for a Sim branch.
struct BranchInput {
  const enc::EncodedSequence* sequence = nullptr;
  std::span<const double> sim_row;
};

struct CnnBranch {
  nn::LayerParams embedding;
  std::array<nn::LayerParams, 3> conv;
};

class AffinityModel {
 public:
  ModelConfig config;
  std::size_t compound_sim_dim = 0;  // Sim-branch widths (0 for CNN branches)
  std::size_t protein_sim_dim = 0;

  std::optional<CnnBranch> compound;
  std::optional<CnnBranch> protein;
  nn::LayerParams fc1, fc2, fc3, output;

  /// All parameters in checkpoint order.
  std::vector<nn::NamedParam> parameters() const;
  std::size_t parameter_count() const;
  std::size_t concat_width() const;

  void zero_grads() const { nn::zero_grads(parameters()); }
};

struct SimDims {
  std::size_t compound = 0;
  std::size_t protein = 0;
};

/// Builds and Glorot-initializes a model. `sim_dims` supplies the
/// similarity-row widths for Sim branches (the training entity counts) and
/// is ignored for CNN branches.
AffinityModel build_model(const ModelConfig& config, std::uint64_t rng_seed,
                          SimDims sim_dims = {});

/// One sample end to end: returns a scalar tensor attached to the parameter
/// graph. Train mode applies dropout and needs an RNG stream.
nn::Tensor forward_one(const AffinityModel& model, const BranchInput& compound,
                       const BranchInput& protein, nn::Mode mode,
                       RngStream* rng = nullptr);

/// Batch prediction (no graph, no dropout state kept). With jobs > 1 the
/// samples are distributed over threads; outputs land by index so results
/// do not depend on scheduling.
std::vector<double> predict_batch(const AffinityModel& model,
                                  const std::vector<BranchInput>& compounds,
                                  const std::vector<BranchInput>& proteins,
                                  nn::Mode mode, int jobs = 1);

/// Checkpoint file: magic "DTA1", little-endian uint32 header length, UTF-8
/// JSON header (config, sim dims, parameter manifest with name/shape/byte
/// offset), then the parameter arrays as little-endian float64 in manifest
/// order. Offsets are relative to the end of the header.
void save_model(const AffinityModel& model, const std::filesystem::path& path);
AffinityModel load_model(const std::filesystem::path& path);

}  // namespace dta::model
