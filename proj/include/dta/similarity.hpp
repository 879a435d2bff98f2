#pragma once

#include <array>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace dta::sim {

/// Affine-gap alignment scoring. A gap of length L costs
/// gap_open + (L - 1) * gap_extend. Substitution scores are indexed by
/// character; pairs never assigned stay at kUnsetScore and alignment
/// rejects sequences containing such characters.
struct AlignmentParams {
  static constexpr int kUnsetScore = std::numeric_limits<int>::min();

  std::array<std::array<int, 128>, 128> substitution;
  double gap_open = 10.0;
  double gap_extend = 0.5;

  AlignmentParams() {
    for (auto& row : substitution) row.fill(kUnsetScore);
  }

  bool knows(char c) const {
    const auto u = static_cast<unsigned char>(c);
    return u < 128 && substitution[u][u] != kUnsetScore;
  }
  int score(char a, char b) const {
    return substitution[static_cast<unsigned char>(a)]
                       [static_cast<unsigned char>(b)];
  }
};

/// BLOSUM62 with gap open 10, gap extend 0.5 over the 25-letter protein
/// alphabet.
AlignmentParams default_alignment_params();
const std::string& blosum62_alphabet();

/// Optimal local alignment score under affine gaps (Gotoh recurrence,
/// score-only, linear space). Always >= 0.
double smith_waterman_score(const std::string& a, const std::string& b,
                            const AlignmentParams& params);

/// SW(a,b) / sqrt(SW(a,a) * SW(b,b)), clamped to [0,1].
double normalized_sw(const std::string& a, const std::string& b,
                     const AlignmentParams& params);

/// Tanimoto coefficient over character n-gram sets. Strings shorter than n
/// contribute themselves as a single gram.
double ngram_tanimoto(const std::string& a, const std::string& b, int n);

struct SimilarityMatrix {
  std::vector<std::string> entity_ids;
  std::vector<double> values;  // dense row-major, size() x size()

  std::size_t size() const { return entity_ids.size(); }
  double at(std::size_t i, std::size_t j) const {
    return values[i * size() + j];
  }
  double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }

  /// Checks unit diagonal, symmetry (tolerance 1e-9) and the [0,1] range.
  void validate() const;
};

enum class Measure { SmithWaterman, NgramTanimoto };

struct MeasureOptions {
  AlignmentParams alignment = default_alignment_params();
  int ngram = 3;
};

/// Full pairwise matrix over (id, sequence) entities: computes the upper
/// triangle (in parallel when jobs > 1) and mirrors it; the diagonal is
/// exactly 1.
SimilarityMatrix build_similarity_matrix(
    const std::vector<std::pair<std::string, std::string>>& entities,
    Measure measure, const MeasureOptions& options = {}, int jobs = 1);

/// TSV matrix exchange: header "ids<TAB>id1<TAB>...", then one row per
/// entity. Import validates shape, ids, symmetry and range, so externally
/// computed matrices can stand in for the built-in measures.
void export_similarity_matrix(const SimilarityMatrix& m,
                              const std::filesystem::path& path);
SimilarityMatrix import_similarity_matrix(const std::filesystem::path& path);

}  // namespace dta::sim
