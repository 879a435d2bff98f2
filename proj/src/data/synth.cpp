#include "dta/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <sstream>

#include "dta/encoding.hpp"
#include "dta/error.hpp"
#include "dta/io_util.hpp"
#include "dta/rng.hpp"

namespace dta::data {

namespace {

constexpr int kNumMotifs = 8;

// Planted sequence motifs. Presence/absence of these drives the latent
// affinity model below; a convolutional encoder can recover them with
// filters of length >= the motif length.
const char* const kDrugMotifs[kNumMotifs] = {"C=N", "c1n", "COS", "NPF",
                                             "S2S", "ICl", "c3o", "N#C"};
const char* const kTargetMotifs[kNumMotifs] = {"GPCR", "KDKE", "WYFH", "MSTN",
                                               "CYSC", "HENR", "LIVA", "DEAD"};

// Base character distributions (cumulative weights built at first use).
struct CharDist {
  std::string symbols;
  std::vector<double> cumulative;

  CharDist(std::string syms, std::vector<double> weights)
      : symbols(std::move(syms)) {
    double total = 0;
    for (double w : weights) {
      total += w;
      cumulative.push_back(total);
    }
    for (double& c : cumulative) c /= total;
  }

  char sample(RngStream& rng) const {
    const double u = rng.uniform();
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), u);
    return symbols[static_cast<std::size_t>(it - cumulative.begin())];
  }
};

const CharDist& smiles_dist() {
  static const CharDist d(
      "Cc()O1N=n2o3S[]s+-F#lH4/Br",
      {20, 12, 8, 8, 7,  6, 6, 5, 4, 3, 2.5, 2, 2, 1.5, 1.5, 1.2,
       1.2, 1, 1, 1, 0.8, 0.8, 0.7, 0.6, 0.5, 0.5});
  return d;
}

const CharDist& protein_dist() {
  // Rough UniProt residue frequencies plus trace ambiguity codes so all 25
  // alphabet letters occur in generated corpora.
  static const CharDist d(
      "LAGVESIKRDTPNFQYMHCWBZXUO",
      {9.6, 8.2, 7.1, 6.9, 6.7, 6.6, 5.9, 5.8, 5.5, 5.5, 5.4, 4.7, 4.0, 3.9,
       3.9, 2.9, 2.4, 2.3, 1.4, 1.1, 0.04, 0.04, 0.04, 0.03, 0.03});
  return d;
}

std::size_t sample_length(RngStream& rng, double mean, double sd,
                          std::size_t lo, std::size_t hi, double tail_prob) {
  double len;
  if (tail_prob > 0 && rng.uniform() < tail_prob)
    len = rng.uniform(mean + 2 * sd, static_cast<double>(hi));
  else
    len = mean + sd * rng.normal();
  len = std::clamp(len, static_cast<double>(lo), static_cast<double>(hi));
  return static_cast<std::size_t>(len);
}

/// Random string with independently planted motifs; returns the presence
/// mask. Motifs land inside the window a standard encoder keeps
/// (`visible_limit`), at non-overlapping offsets.
std::string make_sequence(RngStream& rng, const CharDist& dist,
                          std::size_t length, const char* const* motifs,
                          std::size_t visible_limit, std::uint32_t& presence) {
  std::string s(length, '?');
  for (char& c : s) c = dist.sample(rng);

  presence = 0;
  const std::size_t window = std::min(length, visible_limit);
  std::vector<std::pair<std::size_t, std::size_t>> used;
  for (int m = 0; m < kNumMotifs; ++m) {
    if (rng.uniform() >= 0.5) continue;
    const std::size_t mlen = std::strlen(motifs[m]);
    if (window < mlen) continue;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const std::size_t pos = rng.below(window - mlen + 1);
      const bool overlaps =
          std::any_of(used.begin(), used.end(), [&](const auto& range) {
            return pos < range.second && range.first < pos + mlen;
          });
      if (overlaps) continue;
      s.replace(pos, mlen, motifs[m]);
      used.emplace_back(pos, pos + mlen);
      presence |= 1u << m;
      break;
    }
  }
  return s;
}

/// Latent score: additive motif effects plus a bilinear interaction term.
struct LatentModel {
  double drug_effect[kNumMotifs];
  double target_effect[kNumMotifs];
  double interaction[kNumMotifs][kNumMotifs];

  explicit LatentModel(RngStream& rng) {
    for (double& v : drug_effect) v = rng.uniform(-1.0, 1.0);
    for (double& v : target_effect) v = rng.uniform(-1.0, 1.0);
    for (auto& row : interaction)
      for (double& v : row) v = rng.uniform(-0.4, 0.4);
  }

  double score(std::uint32_t drug_mask, std::uint32_t target_mask) const {
    double s = 0;
    for (int i = 0; i < kNumMotifs; ++i) {
      if (!(drug_mask & (1u << i))) continue;
      s += drug_effect[i];
      for (int j = 0; j < kNumMotifs; ++j)
        if (target_mask & (1u << j)) s += interaction[i][j];
    }
    for (int j = 0; j < kNumMotifs; ++j)
      if (target_mask & (1u << j)) s += target_effect[j];
    return s;
  }
};

double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const std::size_t idx =
      std::min(values.size() - 1,
               static_cast<std::size_t>(q * static_cast<double>(values.size())));
  return values[idx];
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

SynthSpec davis_synth_spec() {
  SynthSpec s;
  s.name = "davis-synth";
  s.num_drugs = 68;
  s.num_targets = 442;
  s.num_interactions = 0;  // complete grid: 30056
  s.value_kind = SynthSpec::ValueKind::KdNanomolar;
  return s;
}

SynthSpec kiba_synth_spec() {
  SynthSpec s;
  s.name = "kiba-synth";
  s.num_drugs = 2111;
  s.num_targets = 229;
  s.num_interactions = 118254;
  s.value_kind = SynthSpec::ValueKind::KibaScore;
  s.smiles_len_mean = 54;
  s.smiles_len_sd = 16;
  s.smiles_len_min = 18;
  s.smiles_len_max = 590;
  s.protein_len_mean = 728;
  s.protein_len_sd = 260;
  s.protein_len_min = 120;
  s.protein_len_max = 4128;
  s.protein_tail_prob = 0.015;
  return s;
}

InteractionDataset generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.num_drugs == 0 || spec.num_targets == 0)
    throw ConfigError("synthetic spec needs at least one drug and one target");

  InteractionDataset ds;
  RngStream seq_rng(mix_seed(seed, 0xd5));
  RngStream model_rng(mix_seed(seed, 0x17));
  RngStream pair_rng(mix_seed(seed, 0xab));

  std::vector<std::uint32_t> drug_mask(spec.num_drugs);
  std::vector<std::uint32_t> target_mask(spec.num_targets);

  for (std::size_t d = 0; d < spec.num_drugs; ++d) {
    const std::size_t len =
        sample_length(seq_rng, spec.smiles_len_mean, spec.smiles_len_sd,
                      spec.smiles_len_min, spec.smiles_len_max, 0.0);
    char id[16];
    std::snprintf(id, sizeof id, "D%05zu", d + 1);
    ds.drugs.emplace_back(id, make_sequence(seq_rng, smiles_dist(), len,
                                            kDrugMotifs, 80, drug_mask[d]));
  }
  for (std::size_t t = 0; t < spec.num_targets; ++t) {
    const std::size_t len = sample_length(
        seq_rng, spec.protein_len_mean, spec.protein_len_sd,
        spec.protein_len_min, spec.protein_len_max, spec.protein_tail_prob);
    char id[16];
    std::snprintf(id, sizeof id, "T%05zu", t + 1);
    ds.targets.emplace_back(id, make_sequence(seq_rng, protein_dist(), len,
                                              kTargetMotifs, 950, target_mask[t]));
  }

  const LatentModel model(model_rng);

  // Choose cells.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  if (spec.num_interactions == 0) {
    cells.reserve(spec.num_drugs * spec.num_targets);
    for (std::size_t d = 0; d < spec.num_drugs; ++d)
      for (std::size_t t = 0; t < spec.num_targets; ++t) cells.emplace_back(d, t);
  } else {
    const std::size_t grid = spec.num_drugs * spec.num_targets;
    if (spec.num_interactions > grid)
      throw ConfigError("requested more interactions than grid cells");
    std::vector<std::size_t> flat(grid);
    std::iota(flat.begin(), flat.end(), std::size_t{0});
    pair_rng.shuffle(flat);
    flat.resize(spec.num_interactions);
    std::sort(flat.begin(), flat.end());
    cells.reserve(flat.size());
    for (std::size_t f : flat)
      cells.emplace_back(f / spec.num_targets, f % spec.num_targets);
  }

  std::vector<double> scores(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    scores[i] = model.score(drug_mask[cells[i].first], target_mask[cells[i].second]);

  ds.interactions.reserve(cells.size());
  if (spec.value_kind == SynthSpec::ValueKind::KdNanomolar) {
    // pKd = 5 + positive part of the centered score; roughly 60% of cells
    // sit at the 10000 nM weak-binding floor, like the benchmark this
    // mimics. Kd = 10^(9 - pKd).
    const double floor_q = quantile(scores, 0.60);
    const double top = quantile(scores, 0.999);
    const double gain = 5.3 / std::max(1e-9, top - floor_q);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double z =
          gain * (scores[i] - floor_q) + 0.15 * pair_rng.normal();
      const double pkd = std::min(5.0 + std::max(0.0, z), 10.8);
      const double kd_nm = pkd == 5.0 ? 10000.0 : std::pow(10.0, 9.0 - pkd);
      ds.interactions.push_back({cells[i].first, cells[i].second, kd_nm});
    }
  } else {
    // KIBA-style score: lower means stronger binding.
    const double mid = quantile(scores, 0.50);
    const double top = quantile(scores, 0.999);
    const double gain = 5.5 / std::max(1e-9, top - mid);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double raw =
          11.3 - gain * (scores[i] - mid) + 0.25 * pair_rng.normal();
      ds.interactions.push_back(
          {cells[i].first, cells[i].second, std::clamp(raw, 0.0, 17.2)});
    }
  }
  return ds;
}

void write_dataset(const InteractionDataset& ds,
                   const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  {
    std::ostringstream out;
    for (const auto& [id, smiles] : ds.drugs) out << id << '\t' << smiles << '\n';
    io::atomic_write(directory / "ligands.tsv", out.str());
  }
  {
    std::ostringstream out;
    for (const auto& [id, seq] : ds.targets) out << id << '\t' << seq << '\n';
    io::atomic_write(directory / "proteins.tsv", out.str());
  }
  {
    std::ostringstream out;
    out << "drug_id\ttarget_id\taffinity\n";
    for (const auto& it : ds.interactions)
      out << ds.drugs[it.drug].first << '\t' << ds.targets[it.target].first
          << '\t' << format_value(it.affinity) << '\n';
    io::atomic_write(directory / "affinities.tsv", out.str());
  }
}

}  // namespace dta::data
