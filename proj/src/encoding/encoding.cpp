#include "dta/encoding.hpp"

#include <sstream>

#include "dta/error.hpp"
#include "dta/io_util.hpp"

namespace dta::enc {

namespace {

std::size_t expected_size(VocabKind kind) {
  return kind == VocabKind::Smiles ? 64 : 25;
}

const char* kind_name(VocabKind kind) {
  return kind == VocabKind::Smiles ? "SMILES" : "protein";
}

}  // namespace

Vocabulary::Vocabulary(VocabKind kind, const std::vector<char>& symbols)
    : kind_(kind), symbols_(symbols) {
  if (symbols_.empty()) throw ConfigError("vocabulary symbol list is empty");
  if (symbols_.size() != expected_size(kind))
    throw ConfigError(std::string(kind_name(kind)) + " vocabulary must have " +
                      std::to_string(expected_size(kind)) + " symbols, got " +
                      std::to_string(symbols_.size()));
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char c = symbols_[i];
    if (map_.count(c))
      throw ConfigError(std::string("duplicate vocabulary symbol '") + c + "'");
    map_[c] = static_cast<std::int32_t>(i + 1);
  }
}

char Vocabulary::symbol_of(std::int32_t index) const {
  if (index < 1 || static_cast<std::size_t>(index) > symbols_.size())
    throw ConfigError("vocabulary index out of range: " + std::to_string(index));
  return symbols_[static_cast<std::size_t>(index - 1)];
}

std::string Vocabulary::serialize() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    out << symbols_[i] << '\t' << (i + 1) << '\n';
  return out.str();
}

Vocabulary Vocabulary::deserialize(VocabKind kind, const std::string& text) {
  std::vector<char> symbols;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = io::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = io::split_tsv(line);
    if (fields.size() != 2 || fields[0].size() != 1)
      throw DataError("vocabulary line " + std::to_string(lineno) +
                      ": expected 'symbol<TAB>index'");
    const long idx = std::stol(fields[1]);
    if (idx != static_cast<long>(symbols.size()) + 1)
      throw DataError("vocabulary line " + std::to_string(lineno) +
                      ": indices must be contiguous from 1, got " + fields[1]);
    symbols.push_back(fields[0][0]);
  }
  return Vocabulary(kind, symbols);
}

Vocabulary Vocabulary::load(VocabKind kind, const std::filesystem::path& path) {
  return deserialize(kind, io::read_file(path));
}

EncodedSequence encode(const std::string& sequence, const Vocabulary& vocab,
                       std::size_t max_length) {
  if (max_length < 1) throw ConfigError("max_length must be >= 1");
  EncodedSequence out;
  out.max_length = max_length;
  out.true_length = sequence.size();
  out.indices.assign(max_length, 0);
  const std::size_t keep = std::min(sequence.size(), max_length);
  for (std::size_t i = 0; i < keep; ++i) {
    const std::int32_t idx = vocab.index_of(sequence[i]);
    if (idx == 0)
      throw DataError(std::string("character '") + sequence[i] +
                      "' at position " + std::to_string(i) +
                      " is not in the " +
                      (vocab.kind() == VocabKind::Smiles ? "SMILES" : "protein") +
                      " vocabulary");
    out.indices[i] = idx;
  }
  return out;
}

std::string decode_prefix(const EncodedSequence& seq, const Vocabulary& vocab) {
  std::string out;
  for (std::int32_t idx : seq.indices) {
    if (idx == 0) break;
    out.push_back(vocab.symbol_of(idx));
  }
  return out;
}

MaxLengths default_max_lengths(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Davis:
      return {85, 1200};
    case DatasetKind::Kiba:
      return {100, 1000};
  }
  throw ConfigError("unknown dataset kind");
}

}  // namespace dta::enc
