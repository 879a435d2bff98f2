#pragma once

#include <cstdint>
#include <filesystem>

#include "dta/dataio.hpp"

namespace dta::data {

/// Shape and value semantics of a generated benchmark.
struct SynthSpec {
  std::string name;
  std::size_t num_drugs = 0;
  std::size_t num_targets = 0;
  /// 0 means the full drug x target grid; otherwise a uniform sample of
  /// this many distinct cells.
  std::size_t num_interactions = 0;
  enum class ValueKind { KdNanomolar, KibaScore } value_kind = ValueKind::KdNanomolar;

  double smiles_len_mean = 64, smiles_len_sd = 14;
  std::size_t smiles_len_min = 20, smiles_len_max = 103;
  double protein_len_mean = 788, protein_len_sd = 280;
  std::size_t protein_len_min = 120, protein_len_max = 2549;
  double protein_tail_prob = 0.0;  // chance of a uniform long-tail length
};

/// Davis-shaped benchmark: 68 drugs x 442 kinase targets, complete grid
/// (30056 pairs), affinities stored as Kd in nanomolar with the weak-binding
/// mass pinned at exactly 10000 nM.
SynthSpec davis_synth_spec();

/// KIBA-shaped benchmark: 2111 drugs x 229 targets, 118254 sampled pairs,
/// affinities stored as KIBA scores (lower = stronger).
SynthSpec kiba_synth_spec();

/// Deterministic generator. Sequences are random strings over the shipped
/// vocabularies with planted n-gram motifs; affinities follow a latent
/// additive-plus-interaction model of motif presence, so the benchmark is
/// learnable from sequence alone.
InteractionDataset generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

/// Writes ligands.tsv / proteins.tsv / affinities.tsv.
void write_dataset(const InteractionDataset& ds,
                   const std::filesystem::path& directory);

}  // namespace dta::data
