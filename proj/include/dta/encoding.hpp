#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace dta::enc {

enum class VocabKind { Smiles, Protein };
enum class DatasetKind { Davis, Kiba };

/// Character-to-index map. Indices are a contiguous 1..V range; 0 is the
/// padding index and never maps to a symbol.
class Vocabulary {
 public:
  Vocabulary(VocabKind kind, const std::vector<char>& symbols);

  VocabKind kind() const { return kind_; }
  std::size_t size() const { return symbols_.size(); }

  /// Index of a symbol, or 0 if the symbol is not in the vocabulary.
  std::int32_t index_of(char c) const {
    auto it = map_.find(c);
    return it == map_.end() ? 0 : it->second;
  }
  char symbol_of(std::int32_t index) const;  // valid for 1..V

  /// "symbol<TAB>index" per line, ordered by index.
  std::string serialize() const;
  static Vocabulary deserialize(VocabKind kind, const std::string& text);
  static Vocabulary load(VocabKind kind, const std::filesystem::path& path);

 private:
  VocabKind kind_;
  std::vector<char> symbols_;  // symbols_[i] has index i+1
  std::unordered_map<char, std::int32_t> map_;
};

/// Canonical vocabularies shipped with the project (the data/ files hold the
/// same content; a test pins them together).
const Vocabulary& smiles_vocabulary();
const Vocabulary& protein_vocabulary();

struct EncodedSequence {
  std::vector<std::int32_t> indices;  // length == max_length, 0-padded
  std::size_t true_length = 0;        // character count before truncation
  std::size_t max_length = 0;
};

/// Label-encodes a sequence: left-to-right map, prefix kept on truncation,
/// zeros appended as padding. Unknown characters are a hard error.
EncodedSequence encode(const std::string& sequence, const Vocabulary& vocab,
                       std::size_t max_length);

/// Inverse of encode on the nonzero prefix (test/debug helper).
std::string decode_prefix(const EncodedSequence& seq, const Vocabulary& vocab);

struct MaxLengths {
  std::size_t smiles;
  std::size_t protein;
};

MaxLengths default_max_lengths(DatasetKind kind);

}  // namespace dta::enc
