#include <cstring>

#include <nlohmann/json.hpp>

#include "dta/error.hpp"
#include "dta/io_util.hpp"
#include "dta/model.hpp"

namespace dta::model {

namespace {

constexpr char kMagic[4] = {'D', 'T', 'A', '1'};

void put_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32_le(const std::string& s, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + i]))
         << (8 * i);
  return v;
}

void put_f64_le(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, 8);
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_f64_le(const std::string& s, std::size_t pos) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + i]))
            << (8 * i);
  double d;
  std::memcpy(&d, &bits, 8);
  return d;
}

}  // namespace

void save_model(const AffinityModel& model, const std::filesystem::path& path) {
  const auto params = model.parameters();

  nlohmann::json manifest = nlohmann::json::array();
  std::size_t offset = 0;
  for (const auto& p : params) {
    manifest.push_back({{"name", p.name},
                        {"shape", p.tensor.shape()},
                        {"offset", offset}});
    offset += p.tensor.numel() * 8;
  }
  nlohmann::json header;
  header["config"] = nlohmann::json::parse(model.config.to_json_text(-1));
  header["compound_sim_dim"] = model.compound_sim_dim;
  header["protein_sim_dim"] = model.protein_sim_dim;
  header["manifest"] = manifest;
  const std::string header_text = header.dump();

  std::string out;
  out.reserve(4 + 4 + header_text.size() + offset);
  out.append(kMagic, 4);
  put_u32_le(out, static_cast<std::uint32_t>(header_text.size()));
  out.append(header_text);
  for (const auto& p : params)
    for (double v : p.tensor.data()) put_f64_le(out, v);
  io::atomic_write(path, out);
}

AffinityModel load_model(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw DataError(path.string() + ": not a DTA1 checkpoint");
  const std::uint32_t header_len = get_u32_le(bytes, 4);
  if (bytes.size() < 8 + static_cast<std::size_t>(header_len))
    throw DataError(path.string() + ": truncated checkpoint header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(8, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": bad checkpoint header: " + e.what());
  }

  ModelConfig config;
  std::size_t compound_sim_dim = 0, protein_sim_dim = 0;
  try {
    config = ModelConfig::from_json_text(header.at("config").dump());
    compound_sim_dim = header.at("compound_sim_dim").get<std::size_t>();
    protein_sim_dim = header.at("protein_sim_dim").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": bad checkpoint header: " + e.what());
  }

  AffinityModel model = build_model(config, config.seed,
                                    {compound_sim_dim, protein_sim_dim});
  const auto params = model.parameters();
  const auto& manifest = header.at("manifest");
  if (!manifest.is_array() || manifest.size() != params.size())
    throw DataError(path.string() + ": manifest lists " +
                    std::to_string(manifest.size()) + " parameters, model has " +
                    std::to_string(params.size()));

  const std::size_t blob_start = 8 + header_len;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& entry = manifest[i];
    const auto name = entry.at("name").get<std::string>();
    const auto shape = entry.at("shape").get<std::vector<std::size_t>>();
    const auto offset = entry.at("offset").get<std::size_t>();
    if (name != params[i].name)
      throw DataError(path.string() + ": manifest entry '" + name +
                      "' does not match expected parameter '" + params[i].name +
                      "'");
    if (shape != params[i].tensor.shape())
      throw DataError(path.string() + ": shape mismatch for parameter '" +
                      name + "'");
    nn::Tensor t = params[i].tensor;
    const std::size_t need = blob_start + offset + t.numel() * 8;
    if (bytes.size() < need)
      throw DataError(path.string() + ": truncated checkpoint data for '" +
                      name + "'");
    auto dst = t.mutable_data();
    for (std::size_t e = 0; e < t.numel(); ++e)
      dst[e] = get_f64_le(bytes, blob_start + offset + e * 8);
  }
  return model;
}

}  // namespace dta::model
