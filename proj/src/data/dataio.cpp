#include "dta/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dta/error.hpp"
#include "dta/io_util.hpp"
#include "dta/rng.hpp"

namespace dta::data {

namespace {

using EntityList = std::vector<std::pair<std::string, std::string>>;

EntityList load_entity_file(const std::filesystem::path& path,
                            const char* what) {
  EntityList out;
  std::unordered_map<std::string, std::size_t> seen;
  std::istringstream in(io::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = io::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = io::split_tsv(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 'id<TAB>" + what + "'");
    if (seen.count(fields[0]))
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": duplicate id '" + fields[0] + "'");
    seen[fields[0]] = out.size();
    out.emplace_back(fields[0], fields[1]);
  }
  if (out.empty()) throw DataError(path.string() + ": no entries");
  return out;
}

}  // namespace

std::size_t InteractionDataset::find_drug(const std::string& id) const {
  for (std::size_t i = 0; i < drugs.size(); ++i)
    if (drugs[i].first == id) return i;
  throw DataError("unknown drug id: " + id);
}

std::size_t InteractionDataset::find_target(const std::string& id) const {
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (targets[i].first == id) return i;
  throw DataError("unknown target id: " + id);
}

InteractionDataset load_dataset(const std::filesystem::path& directory) {
  InteractionDataset ds;
  ds.drugs = load_entity_file(directory / "ligands.tsv", "SMILES");
  ds.targets = load_entity_file(directory / "proteins.tsv", "sequence");

  std::unordered_map<std::string, std::size_t> drug_index, target_index;
  for (std::size_t i = 0; i < ds.drugs.size(); ++i)
    drug_index[ds.drugs[i].first] = i;
  for (std::size_t i = 0; i < ds.targets.size(); ++i)
    target_index[ds.targets[i].first] = i;

  const auto path = directory / "affinities.tsv";
  std::istringstream in(io::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
  while (std::getline(in, line)) {
    ++lineno;
    line = io::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = io::split_tsv(line);
    if (fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 'drug_id<TAB>target_id<TAB>value'");
    double value;
    if (!io::parse_double(fields[2], value)) {
      if (lineno == 1) continue;  // optional header row
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": affinity '" + fields[2] + "' is not a number");
    }
    if (!std::isfinite(value))
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": affinity is not finite");
    const auto d = drug_index.find(fields[0]);
    if (d == drug_index.end())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": drug id '" + fields[0] + "' not in ligands.tsv");
    const auto t = target_index.find(fields[1]);
    if (t == target_index.end())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": target id '" + fields[1] + "' not in proteins.tsv");
    if (!seen_pairs.emplace(d->second, t->second).second)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": duplicate pair (" + fields[0] + ", " + fields[1] + ")");
    ds.interactions.push_back({d->second, t->second, value});
  }
  if (ds.interactions.empty())
    throw DataError(path.string() + ": no interactions");
  return ds;
}

double pkd_transform(double kd_nanomolar) {
  if (!(kd_nanomolar > 0.0))
    throw DataError("pkd_transform requires Kd > 0, got " +
                    std::to_string(kd_nanomolar));
  return -std::log10(kd_nanomolar / 1e9);
}

std::vector<double> kiba_transform(const std::vector<double>& scores) {
  if (scores.empty()) throw DataError("kiba_transform: empty score list");
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = -scores[i];
  const double lo = *std::min_element(out.begin(), out.end());
  for (double& v : out) v -= lo;
  return out;
}

AffinityTransform transform_from_name(const std::string& name) {
  if (name == "none") return AffinityTransform::None;
  if (name == "pkd") return AffinityTransform::Pkd;
  if (name == "kiba") return AffinityTransform::Kiba;
  throw ConfigError("unknown transform '" + name + "' (none|pkd|kiba)");
}

void apply_transform(InteractionDataset& ds, AffinityTransform t) {
  switch (t) {
    case AffinityTransform::None:
      return;
    case AffinityTransform::Pkd:
      for (auto& it : ds.interactions) it.affinity = pkd_transform(it.affinity);
      return;
    case AffinityTransform::Kiba: {
      std::vector<double> scores(ds.interactions.size());
      for (std::size_t i = 0; i < scores.size(); ++i)
        scores[i] = ds.interactions[i].affinity;
      const auto transformed = kiba_transform(scores);
      for (std::size_t i = 0; i < scores.size(); ++i)
        ds.interactions[i].affinity = transformed[i];
      return;
    }
  }
}

std::size_t FoldPlan::total() const {
  std::size_t n = test_indices.size();
  for (const auto& f : train_folds) n += f.size();
  return n;
}

std::vector<std::size_t> FoldPlan::train_union() const {
  std::vector<std::size_t> all;
  for (const auto& f : train_folds) all.insert(all.end(), f.begin(), f.end());
  return all;
}

std::vector<std::size_t> FoldPlan::train_without(std::size_t held_out) const {
  if (held_out >= train_folds.size())
    throw ConfigError("fold number out of range: " + std::to_string(held_out));
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < train_folds.size(); ++i)
    if (i != held_out)
      all.insert(all.end(), train_folds[i].begin(), train_folds[i].end());
  return all;
}

FoldPlan make_fold_plan(const InteractionDataset& dataset, std::uint64_t seed) {
  const std::size_t n = dataset.interactions.size();
  if (n < 6)
    throw DataError("need at least 6 interactions to build a fold plan, have " +
                    std::to_string(n));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream rng(seed);
  rng.shuffle(order);

  FoldPlan plan;
  plan.seed = seed;
  const std::size_t base = n / 6;
  const std::size_t extra = n % 6;  // first `extra` parts get one more
  std::size_t pos = 0;
  for (std::size_t part = 0; part < 6; ++part) {
    const std::size_t size = base + (part < extra ? 1 : 0);
    std::vector<std::size_t> slice(order.begin() + pos,
                                   order.begin() + pos + size);
    pos += size;
    if (part == 0)
      plan.test_indices = std::move(slice);
    else
      plan.train_folds.push_back(std::move(slice));
  }
  return plan;
}

void save_fold_plan(const FoldPlan& plan, const std::filesystem::path& path) {
  nlohmann::json j;
  j["seed"] = plan.seed;
  j["test"] = plan.test_indices;
  j["folds"] = plan.train_folds;
  io::atomic_write(path, j.dump(2) + "\n");
}

FoldPlan load_fold_plan(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("fold plan " + path.string() + ": " + e.what());
  }
  FoldPlan plan;
  try {
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.test_indices = j.at("test").get<std::vector<std::size_t>>();
    plan.train_folds =
        j.at("folds").get<std::vector<std::vector<std::size_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("fold plan " + path.string() + ": " + e.what());
  }
  if (plan.train_folds.size() != 5)
    throw DataError("fold plan " + path.string() + ": expected 5 train folds");

  // The six parts must partition 0..n-1 with no overlap and no gap.
  std::vector<std::size_t> all = plan.test_indices;
  for (const auto& f : plan.train_folds) all.insert(all.end(), f.begin(), f.end());
  std::vector<char> seen(all.size(), 0);
  for (std::size_t idx : all) {
    if (idx >= all.size())
      throw DataError("fold plan " + path.string() +
                      ": index out of range (gap in coverage): " +
                      std::to_string(idx));
    if (seen[idx])
      throw DataError("fold plan " + path.string() +
                      ": index appears twice: " + std::to_string(idx));
    seen[idx] = 1;
  }
  return plan;
}

}  // namespace dta::data
