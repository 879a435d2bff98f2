#include "dta/encoding.hpp"

namespace dta::enc {

namespace {

// Canonical label-encoding alphabets. The SMILES set covers element
// symbols (one character per label, so "Cl" is 'C','l'), aromatic and
// two-letter-element lowercase, ring digits, and bond/branch/charge
// punctuation; the protein set is the 25 residue letters (A-Z without J).
// Index = 1-based position in these lists; 0 is reserved for padding.
constexpr char kSmilesSymbols[] = {
    'C', 'H', 'N', 'S', 'O', 'P', 'F', 'B', 'I', 'K', 'A', 'D', 'E',
    'G', 'L', 'M', 'R', 'T', 'V', 'W', 'Y', 'U', 'X', 'Z',
    'c', 'n', 'o', 's', 'p', 'b', 'l', 'r', 'e', 'i', 'a', 'g', 't',
    'u', 'd', 'h',
    '0', '1', '2', '3', '4', '5', '6', '7', '8', '9',
    '(', ')', '[', ']', '+', '-', '#', '/', '\\', '.', '%', ':', '=', '@',
};

constexpr char kProteinSymbols[] = {
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'K', 'L', 'M', 'N',
    'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W', 'X', 'Y', 'Z',
};

}  // namespace

const Vocabulary& smiles_vocabulary() {
  static const Vocabulary v(
      VocabKind::Smiles,
      std::vector<char>(std::begin(kSmilesSymbols), std::end(kSmilesSymbols)));
  return v;
}

const Vocabulary& protein_vocabulary() {
  static const Vocabulary v(
      VocabKind::Protein,
      std::vector<char>(std::begin(kProteinSymbols), std::end(kProteinSymbols)));
  return v;
}

}  // namespace dta::enc
