#include "dta/similarity.hpp"

namespace dta::sim {

namespace {

// BLOSUM62 over the project protein alphabet (A-Z without J), with the
// conventional extension U -> scores of C and O -> scores of K.
constexpr char kAlphabet[] = "ABCDEFGHIKLMNOPQRSTUVWXYZ";

constexpr int kBlosum62[25][25] = {
    {  4,  -2,   0,  -2,  -1,  -2,   0,  -2,  -1,  -1,  -1,  -1,  -2,  -1,  -1,  -1,  -1,   1,   0,   0,   0,  -3,   0,  -2,  -1},
    { -2,   4,  -3,   4,   1,  -3,  -1,   0,  -3,   0,  -4,  -3,   3,   0,  -2,   0,  -1,   0,  -1,  -3,  -3,  -4,  -1,  -3,   1},
    {  0,  -3,   9,  -3,  -4,  -2,  -3,  -3,  -1,  -3,  -1,  -1,  -3,  -3,  -3,  -3,  -3,  -1,  -1,   9,  -1,  -2,  -2,  -2,  -3},
    { -2,   4,  -3,   6,   2,  -3,  -1,  -1,  -3,  -1,  -4,  -3,   1,  -1,  -1,   0,  -2,   0,  -1,  -3,  -3,  -4,  -1,  -3,   1},
    { -1,   1,  -4,   2,   5,  -3,  -2,   0,  -3,   1,  -3,  -2,   0,   1,  -1,   2,   0,   0,  -1,  -4,  -2,  -3,  -1,  -2,   4},
    { -2,  -3,  -2,  -3,  -3,   6,  -3,  -1,   0,  -3,   0,   0,  -3,  -3,  -4,  -3,  -3,  -2,  -2,  -2,  -1,   1,  -1,   3,  -3},
    {  0,  -1,  -3,  -1,  -2,  -3,   6,  -2,  -4,  -2,  -4,  -3,   0,  -2,  -2,  -2,  -2,   0,  -2,  -3,  -3,  -2,  -1,  -3,  -2},
    { -2,   0,  -3,  -1,   0,  -1,  -2,   8,  -3,  -1,  -3,  -2,   1,  -1,  -2,   0,   0,  -1,  -2,  -3,  -3,  -2,  -1,   2,   0},
    { -1,  -3,  -1,  -3,  -3,   0,  -4,  -3,   4,  -3,   2,   1,  -3,  -3,  -3,  -3,  -3,  -2,  -1,  -1,   3,  -3,  -1,  -1,  -3},
    { -1,   0,  -3,  -1,   1,  -3,  -2,  -1,  -3,   5,  -2,  -1,   0,   5,  -1,   1,   2,   0,  -1,  -3,  -2,  -3,  -1,  -2,   1},
    { -1,  -4,  -1,  -4,  -3,   0,  -4,  -3,   2,  -2,   4,   2,  -3,  -2,  -3,  -2,  -2,  -2,  -1,  -1,   1,  -2,  -1,  -1,  -3},
    { -1,  -3,  -1,  -3,  -2,   0,  -3,  -2,   1,  -1,   2,   5,  -2,  -1,  -2,   0,  -1,  -1,  -1,  -1,   1,  -1,  -1,  -1,  -1},
    { -2,   3,  -3,   1,   0,  -3,   0,   1,  -3,   0,  -3,  -2,   6,   0,  -2,   0,   0,   1,   0,  -3,  -3,  -4,  -1,  -2,   0},
    { -1,   0,  -3,  -1,   1,  -3,  -2,  -1,  -3,   5,  -2,  -1,   0,   5,  -1,   1,   2,   0,  -1,  -3,  -2,  -3,  -1,  -2,   1},
    { -1,  -2,  -3,  -1,  -1,  -4,  -2,  -2,  -3,  -1,  -3,  -2,  -2,  -1,   7,  -1,  -2,  -1,  -1,  -3,  -2,  -4,  -2,  -3,  -1},
    { -1,   0,  -3,   0,   2,  -3,  -2,   0,  -3,   1,  -2,   0,   0,   1,  -1,   5,   1,   0,  -1,  -3,  -2,  -2,  -1,  -1,   3},
    { -1,  -1,  -3,  -2,   0,  -3,  -2,   0,  -3,   2,  -2,  -1,   0,   2,  -2,   1,   5,  -1,  -1,  -3,  -3,  -3,  -1,  -2,   0},
    {  1,   0,  -1,   0,   0,  -2,   0,  -1,  -2,   0,  -2,  -1,   1,   0,  -1,   0,  -1,   4,   1,  -1,  -2,  -3,   0,  -2,   0},
    {  0,  -1,  -1,  -1,  -1,  -2,  -2,  -2,  -1,  -1,  -1,  -1,   0,  -1,  -1,  -1,  -1,   1,   5,  -1,   0,  -2,   0,  -2,  -1},
    {  0,  -3,   9,  -3,  -4,  -2,  -3,  -3,  -1,  -3,  -1,  -1,  -3,  -3,  -3,  -3,  -3,  -1,  -1,   9,  -1,  -2,  -2,  -2,  -3},
    {  0,  -3,  -1,  -3,  -2,  -1,  -3,  -3,   3,  -2,   1,   1,  -3,  -2,  -2,  -2,  -3,  -2,   0,  -1,   4,  -3,  -1,  -1,  -2},
    { -3,  -4,  -2,  -4,  -3,   1,  -2,  -2,  -3,  -3,  -2,  -1,  -4,  -3,  -4,  -2,  -3,  -3,  -2,  -2,  -3,  11,  -2,   2,  -3},
    {  0,  -1,  -2,  -1,  -1,  -1,  -1,  -1,  -1,  -1,  -1,  -1,  -1,  -1,  -2,  -1,  -1,   0,   0,  -2,  -1,  -2,  -1,  -1,  -1},
    { -2,  -3,  -2,  -3,  -2,   3,  -3,   2,  -1,  -2,  -1,  -1,  -2,  -2,  -3,  -1,  -2,  -2,  -2,  -2,  -1,   2,  -1,   7,  -2},
    { -1,   1,  -3,   1,   4,  -3,  -2,   0,  -3,   1,  -3,  -1,   0,   1,  -1,   3,   0,   0,  -1,  -3,  -2,  -3,  -1,  -2,   4},
};

}  // namespace

const std::string& blosum62_alphabet() {
  static const std::string a(kAlphabet);
  return a;
}

AlignmentParams default_alignment_params() {
  AlignmentParams p;
  p.gap_open = 10.0;
  p.gap_extend = 0.5;
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = 0; j < 25; ++j)
      p.substitution[static_cast<unsigned char>(kAlphabet[i])]
                    [static_cast<unsigned char>(kAlphabet[j])] = kBlosum62[i][j];
  return p;
}

}  // namespace dta::sim
