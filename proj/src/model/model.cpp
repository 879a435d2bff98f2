#include "dta/model.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "dta/error.hpp"
#include "dta/io_util.hpp"
#include "dta/rng.hpp"

namespace dta::model {

namespace {

using nn::LayerKind;
using nn::LayerParams;
using nn::Tensor;

Tensor glorot_tensor(std::vector<std::size_t> shape, std::size_t fan_in,
                     std::size_t fan_out, RngStream& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor t = Tensor::zeros(std::move(shape), /*requires_grad=*/true);
  for (double& v : t.mutable_data()) v = rng.uniform(-limit, limit);
  return t;
}

LayerParams make_embedding(const std::string& name, std::size_t vocab_size,
                           std::size_t embed_dim, RngStream& rng) {
  LayerParams p;
  p.name = name;
  p.kind = LayerKind::Embedding;
  p.weights =
      glorot_tensor({vocab_size + 1, embed_dim}, vocab_size + 1, embed_dim, rng);
  return p;
}

LayerParams make_conv(const std::string& name, std::size_t filters,
                      std::size_t in_channels, std::size_t k, RngStream& rng) {
  LayerParams p;
  p.name = name;
  p.kind = LayerKind::Conv1D;
  p.weights = glorot_tensor({filters, in_channels, k}, in_channels * k,
                            filters * k, rng);
  p.bias = Tensor::zeros({filters}, /*requires_grad=*/true);
  return p;
}

LayerParams make_dense(const std::string& name, std::size_t out_units,
                       std::size_t in_units, RngStream& rng) {
  LayerParams p;
  p.name = name;
  p.kind = LayerKind::Dense;
  p.weights = glorot_tensor({out_units, in_units}, in_units, out_units, rng);
  p.bias = Tensor::zeros({out_units}, /*requires_grad=*/true);
  return p;
}

CnnBranch make_branch(const std::string& prefix, std::size_t vocab_size,
                      const ModelConfig& cfg, std::size_t k, std::size_t max_len,
                      RngStream& rng) {
  const auto base = static_cast<std::size_t>(cfg.num_filters_base);
  const auto embed = static_cast<std::size_t>(cfg.embed_dim);
  // Three valid convolutions shrink the length by 3(k-1) total.
  if (max_len < 3 * (k - 1) + 1)
    throw ConfigError(prefix + " branch: filter length " + std::to_string(k) +
                      " leaves no convolution output for max length " +
                      std::to_string(max_len));
  CnnBranch b{
      make_embedding(prefix + ".embedding", vocab_size, embed, rng),
      {make_conv(prefix + ".conv1", base, embed, k, rng),
       make_conv(prefix + ".conv2", 2 * base, base, k, rng),
       make_conv(prefix + ".conv3", 3 * base, 2 * base, k, rng)}};
  return b;
}

void append_params(std::vector<nn::NamedParam>& out, const LayerParams& p) {
  out.push_back({p.name + ".weight", p.weights});
  if (p.has_bias()) out.push_back({p.name + ".bias", p.bias});
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::CnnCnn: return "CnnCnn";
    case Variant::CnnSim: return "CnnSim";
    case Variant::SimCnn: return "SimCnn";
    case Variant::SimSim: return "SimSim";
  }
  throw ConfigError("unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "CnnCnn") return Variant::CnnCnn;
  if (name == "CnnSim") return Variant::CnnSim;
  if (name == "SimCnn") return Variant::SimCnn;
  if (name == "SimSim") return Variant::SimSim;
  throw ConfigError("unknown model variant '" + name + "'");
}

void ModelConfig::validate() const {
  if (num_filters_base < 1) throw ConfigError("num_filters_base must be >= 1");
  if (compound_filter_length < 1 || protein_filter_length < 1)
    throw ConfigError("filter lengths must be >= 1");
  if (embed_dim < 1) throw ConfigError("embed_dim must be >= 1");
  if (smiles_max_len < 1 || protein_max_len < 1)
    throw ConfigError("max lengths must be >= 1");
  for (int s : fc_sizes)
    if (s < 1) throw ConfigError("fc_sizes entries must be >= 1");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0)
    throw ConfigError("dropout_rate must be in [0, 1)");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
}

std::string ModelConfig::to_json_text(int indent) const {
  nlohmann::json j;
  j["variant"] = variant_name(variant);
  j["num_filters_base"] = num_filters_base;
  j["compound_filter_length"] = compound_filter_length;
  j["protein_filter_length"] = protein_filter_length;
  j["embed_dim"] = embed_dim;
  j["smiles_max_len"] = smiles_max_len;
  j["protein_max_len"] = protein_max_len;
  j["fc_sizes"] = fc_sizes;
  j["dropout_rate"] = dropout_rate;
  j["epochs"] = epochs;
  j["batch_size"] = batch_size;
  j["learning_rate"] = learning_rate;
  j["seed"] = seed;
  return j.dump(indent);
}

ModelConfig ModelConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  ModelConfig c;
  try {
    c.variant = variant_from_name(j.at("variant").get<std::string>());
    c.num_filters_base = j.at("num_filters_base").get<int>();
    c.compound_filter_length = j.at("compound_filter_length").get<int>();
    c.protein_filter_length = j.at("protein_filter_length").get<int>();
    c.embed_dim = j.at("embed_dim").get<int>();
    c.smiles_max_len = j.at("smiles_max_len").get<int>();
    c.protein_max_len = j.at("protein_max_len").get<int>();
    c.fc_sizes = j.at("fc_sizes").get<std::array<int, 3>>();
    c.dropout_rate = j.at("dropout_rate").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  c.validate();
  return c;
}

ModelConfig ModelConfig::load(const std::filesystem::path& path) {
  return from_json_text(io::read_file(path));
}

std::vector<nn::NamedParam> AffinityModel::parameters() const {
  std::vector<nn::NamedParam> out;
  const auto branch = [&out](const std::optional<CnnBranch>& b) {
    if (!b) return;
    append_params(out, b->embedding);
    for (const auto& c : b->conv) append_params(out, c);
  };
  branch(compound);
  branch(protein);
  append_params(out, fc1);
  append_params(out, fc2);
  append_params(out, fc3);
  append_params(out, output);
  return out;
}

std::size_t AffinityModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : parameters()) n += p.tensor.numel();
  return n;
}

std::size_t AffinityModel::concat_width() const {
  const auto branch_width = [this](const std::optional<CnnBranch>& b,
                                   std::size_t sim_dim) {
    return b ? 3 * static_cast<std::size_t>(config.num_filters_base) : sim_dim;
  };
  return branch_width(compound, compound_sim_dim) +
         branch_width(protein, protein_sim_dim);
}

AffinityModel build_model(const ModelConfig& config, std::uint64_t rng_seed,
                          SimDims sim_dims) {
  config.validate();
  RngStream rng(rng_seed);

  AffinityModel m;
  m.config = config;

  const bool compound_cnn =
      config.variant == Variant::CnnCnn || config.variant == Variant::CnnSim;
  const bool protein_cnn =
      config.variant == Variant::CnnCnn || config.variant == Variant::SimCnn;

  if (compound_cnn)
    m.compound = make_branch(
        "compound", enc::smiles_vocabulary().size(), config,
        static_cast<std::size_t>(config.compound_filter_length),
        static_cast<std::size_t>(config.smiles_max_len), rng);
  else {
    if (sim_dims.compound == 0)
      throw ConfigError("compound Sim branch needs a similarity row width");
    m.compound_sim_dim = sim_dims.compound;
  }

  if (protein_cnn)
    m.protein = make_branch(
        "protein", enc::protein_vocabulary().size(), config,
        static_cast<std::size_t>(config.protein_filter_length),
        static_cast<std::size_t>(config.protein_max_len), rng);
  else {
    if (sim_dims.protein == 0)
      throw ConfigError("protein Sim branch needs a similarity row width");
    m.protein_sim_dim = sim_dims.protein;
  }

  const auto f1 = static_cast<std::size_t>(config.fc_sizes[0]);
  const auto f2 = static_cast<std::size_t>(config.fc_sizes[1]);
  const auto f3 = static_cast<std::size_t>(config.fc_sizes[2]);
  m.fc1 = make_dense("fc1", f1, m.concat_width(), rng);
  m.fc2 = make_dense("fc2", f2, f1, rng);
  m.fc3 = make_dense("fc3", f3, f2, rng);
  m.output = make_dense("output", 1, f3, rng);
  return m;
}

namespace {

nn::Tensor branch_forward(const AffinityModel& model,
                          const std::optional<CnnBranch>& branch,
                          const BranchInput& input, std::size_t sim_dim,
                          const char* which, std::size_t expected_len) {
  if (branch) {
    if (input.sequence == nullptr)
      throw ConfigError(std::string(which) +
                        " branch expects an encoded sequence input");
    if (input.sequence->indices.size() != expected_len)
      throw ConfigError(std::string(which) + " sequence encoded to length " +
                        std::to_string(input.sequence->indices.size()) +
                        " but the model expects " +
                        std::to_string(expected_len));
    nn::Tensor x = nn::embedding_forward(*input.sequence, branch->embedding);
    for (const auto& conv : branch->conv)
      x = nn::relu(nn::conv1d_forward(x, conv));
    return nn::global_max_pool(x);
  }
  if (input.sim_row.size() != sim_dim)
    throw ConfigError(std::string(which) + " similarity row has length " +
                      std::to_string(input.sim_row.size()) +
                      " but the model expects " + std::to_string(sim_dim));
  (void)model;
  return nn::Tensor::vector(
      std::vector<double>(input.sim_row.begin(), input.sim_row.end()));
}

}  // namespace

nn::Tensor forward_one(const AffinityModel& model, const BranchInput& compound,
                       const BranchInput& protein, nn::Mode mode,
                       RngStream* rng) {
  if (mode == nn::Mode::Train && rng == nullptr)
    throw ConfigError("Train-mode forward needs an RNG stream for dropout");
  RngStream unused(0);
  RngStream& r = rng ? *rng : unused;

  nn::Tensor cv = branch_forward(
      model, model.compound, compound, model.compound_sim_dim, "compound",
      static_cast<std::size_t>(model.config.smiles_max_len));
  nn::Tensor pv = branch_forward(
      model, model.protein, protein, model.protein_sim_dim, "protein",
      static_cast<std::size_t>(model.config.protein_max_len));

  nn::Tensor h = nn::concat(cv, pv);
  h = nn::relu(nn::dense_forward(h, model.fc1));
  h = nn::dropout(h, model.config.dropout_rate, mode, r);
  h = nn::relu(nn::dense_forward(h, model.fc2));
  h = nn::dropout(h, model.config.dropout_rate, mode, r);
  h = nn::relu(nn::dense_forward(h, model.fc3));
  return nn::dense_forward(h, model.output);
}

std::vector<double> predict_batch(const AffinityModel& model,
                                  const std::vector<BranchInput>& compounds,
                                  const std::vector<BranchInput>& proteins,
                                  nn::Mode mode, int jobs) {
  if (compounds.size() != proteins.size())
    throw ConfigError("predict_batch: input lists differ in length");
  if (mode == nn::Mode::Train)
    throw ConfigError("predict_batch runs in Eval mode only");
  const std::size_t n = compounds.size();
  std::vector<double> out(n);

  const auto run_range = [&](std::size_t lo, std::size_t hi) {
    nn::NoGradGuard guard;
    for (std::size_t i = lo; i < hi; ++i)
      out[i] = forward_one(model, compounds[i], proteins[i], mode).value();
  };

  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, lo, hi] {
        try {
          run_range(lo, hi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }
  return out;
}

}  // namespace dta::model
