#include "dta/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "dta/error.hpp"
#include "dta/io_util.hpp"

namespace dta::sim {

namespace {

void check_sequence(const std::string& s, const AlignmentParams& params,
                    const char* which) {
  if (s.empty())
    throw DataError(std::string("empty ") + which + " sequence");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!params.knows(s[i]))
      throw DataError(std::string("unknown residue '") + s[i] +
                      "' at position " + std::to_string(i) + " of " + which +
                      " sequence");
}

void check_gaps(const AlignmentParams& params) {
  if (!(params.gap_extend > 0.0) || !(params.gap_open >= params.gap_extend))
    throw ConfigError("alignment gaps must satisfy gap_open >= gap_extend > 0");
}

}  // namespace

double smith_waterman_score(const std::string& a, const std::string& b,
                            const AlignmentParams& params) {
  check_gaps(params);
  check_sequence(a, params, "first");
  check_sequence(b, params, "second");

  const double open = params.gap_open;
  const double ext = params.gap_extend;
  const double ninf = -std::numeric_limits<double>::infinity();
  const std::size_t m = b.size();

  // Rolling rows: H holds the previous row until each cell is overwritten,
  // F carries the vertical gap state per column.
  std::vector<double> h(m + 1, 0.0);
  std::vector<double> f(m + 1, ninf);
  double best = 0.0;

  for (char ca : a) {
    double diag = h[0];
    double e = ninf;
    for (std::size_t j = 1; j <= m; ++j) {
      e = std::max(h[j - 1] - open, e - ext);
      f[j] = std::max(h[j] - open, f[j] - ext);
      const double sub = diag + params.score(ca, b[j - 1]);
      const double cell = std::max({0.0, sub, e, f[j]});
      diag = h[j];
      h[j] = cell;
      best = std::max(best, cell);
    }
  }
  return best;
}

double normalized_sw(const std::string& a, const std::string& b,
                     const AlignmentParams& params) {
  const double saa = smith_waterman_score(a, a, params);
  const double sbb = smith_waterman_score(b, b, params);
  if (saa <= 0.0 || sbb <= 0.0)
    throw NumericError("normalized_sw: zero self-alignment score");
  const double v = smith_waterman_score(a, b, params) / std::sqrt(saa * sbb);
  return std::clamp(v, 0.0, 1.0);
}

double ngram_tanimoto(const std::string& a, const std::string& b, int n) {
  if (n < 1) throw ConfigError("ngram_tanimoto: n must be >= 1");
  if (a.empty() || b.empty())
    throw DataError("ngram_tanimoto: empty sequence");

  const auto grams = [n](const std::string& s) {
    std::unordered_set<std::string> g;
    if (s.size() < static_cast<std::size_t>(n)) {
      g.insert(s);
      return g;
    }
    for (std::size_t i = 0; i + n <= s.size(); ++i) g.insert(s.substr(i, n));
    return g;
  };

  const auto ga = grams(a);
  const auto gb = grams(b);
  std::size_t inter = 0;
  for (const auto& g : ga) inter += gb.count(g);
  const std::size_t uni = ga.size() + gb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

void SimilarityMatrix::validate() const {
  const std::size_t n = size();
  if (values.size() != n * n)
    throw DataError("similarity matrix storage does not match id count");
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 1.0)
      throw DataError("similarity diagonal is not 1.0 for id '" +
                      entity_ids[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0))
        throw DataError("similarity out of [0,1] at (" + entity_ids[i] + ", " +
                        entity_ids[j] + "): " + std::to_string(v));
      if (std::fabs(v - at(j, i)) > 1e-9)
        throw DataError("similarity asymmetry at (" + entity_ids[i] + ", " +
                        entity_ids[j] + ")");
    }
  }
}

SimilarityMatrix build_similarity_matrix(
    const std::vector<std::pair<std::string, std::string>>& entities,
    Measure measure, const MeasureOptions& options, int jobs) {
  if (entities.empty())
    throw DataError("build_similarity_matrix: no entities");
  const std::size_t n = entities.size();

  SimilarityMatrix m;
  m.entity_ids.reserve(n);
  for (const auto& e : entities) m.entity_ids.push_back(e.first);
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;

  // Self-alignment scores once per entity, not once per pair.
  std::vector<double> self_scores;
  if (measure == Measure::SmithWaterman) {
    self_scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      try {
        self_scores[i] = smith_waterman_score(entities[i].second,
                                              entities[i].second,
                                              options.alignment);
      } catch (const std::exception& e) {
        throw DataError("entity '" + entities[i].first + "': " + e.what());
      }
      if (self_scores[i] <= 0.0)
        throw NumericError("entity '" + entities[i].first +
                           "': zero self-alignment score");
    }
  }

  const auto pair_value = [&](std::size_t i, std::size_t j) {
    try {
      if (measure == Measure::SmithWaterman) {
        const double raw = smith_waterman_score(
            entities[i].second, entities[j].second, options.alignment);
        return std::clamp(raw / std::sqrt(self_scores[i] * self_scores[j]),
                          0.0, 1.0);
      }
      return ngram_tanimoto(entities[i].second, entities[j].second,
                            options.ngram);
    } catch (const std::exception& e) {
      throw DataError("pair (" + entities[i].first + ", " + entities[j].first +
                      "): " + e.what());
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)),
                               pairs.size()));
  if (workers == 1) {
    for (const auto& [i, j] : pairs) {
      const double v = pair_value(i, j);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t p = w; p < pairs.size(); p += workers) {
            const auto [i, j] = pairs[p];
            const double v = pair_value(i, j);
            m.at(i, j) = v;
            m.at(j, i) = v;
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }
  return m;
}

void export_similarity_matrix(const SimilarityMatrix& m,
                              const std::filesystem::path& path) {
  m.validate();
  std::ostringstream out;
  out << "ids";
  for (const auto& id : m.entity_ids) out << '\t' << id;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.entity_ids[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      out << '\t' << buf;
    }
    out << '\n';
  }
  io::atomic_write(path, out.str());
}

SimilarityMatrix import_similarity_matrix(const std::filesystem::path& path) {
  std::istringstream in(io::read_file(path));
  std::string line;
  if (!std::getline(in, line))
    throw DataError(path.string() + ": empty similarity file");
  auto header = io::split_tsv(io::strip_cr(line));
  if (header.size() < 2 || header[0] != "ids")
    throw DataError(path.string() + ": header must start with 'ids'");

  SimilarityMatrix m;
  m.entity_ids.assign(header.begin() + 1, header.end());
  const std::size_t n = m.entity_ids.size();
  m.values.assign(n * n, 0.0);

  std::size_t row = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = io::strip_cr(line);
    if (line.empty()) continue;
    if (row >= n)
      throw DataError(path.string() + ": more rows than header ids");
    const auto fields = io::split_tsv(line);
    if (fields.size() != n + 1)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected " + std::to_string(n + 1) + " fields");
    if (fields[0] != m.entity_ids[row])
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": row id '" + fields[0] + "' does not match header id '" +
                      m.entity_ids[row] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      double v;
      if (!io::parse_double(fields[j + 1], v))
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": bad value '" + fields[j + 1] + "'");
      m.at(row, j) = v;
    }
    ++row;
  }
  if (row != n)
    throw DataError(path.string() + ": expected " + std::to_string(n) +
                    " rows, got " + std::to_string(row));
  m.validate();
  return m;
}

}  // namespace dta::sim
