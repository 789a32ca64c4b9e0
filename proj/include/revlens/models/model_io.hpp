#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "revlens/io.hpp"
#include "revlens/models/model.hpp"

namespace revlens {

inline constexpr std::string_view kModelMagic = "RVLM";
inline constexpr std::uint8_t kModelFormatVersion = 1;

class ModelFormatError : public ModelError {
public:
  using ModelError::ModelError;
};

// Layout: magic, version (u8), algorithm (u8), feature mode (u8),
// converged (u8), label count (u32) and label ids (u8 each), vocabulary
// JSON (u64-prefixed), metadata JSON (u64-prefixed), then the weight, bias
// and absence tables as u64 counts followed by little-endian f64 values,
// and finally a CRC32 of every preceding byte.
inline std::string serialize_model(const TrainedModel& m) {
  m.validate();
  ByteWriter w;
  w.raw(kModelMagic);
  w.u8(kModelFormatVersion);
  w.u8(static_cast<std::uint8_t>(m.algorithm));
  w.u8(static_cast<std::uint8_t>(m.feature_mode));
  w.u8(m.converged ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(m.labels.size()));
  for (auto l : m.labels) w.u8(static_cast<std::uint8_t>(l));
  w.blob(m.vocabulary->to_json().dump());
  w.blob(m.metadata.dump());
  for (const auto* table : {&m.weights, &m.bias, &m.absent}) {
    w.u64(table->size());
    for (double v : *table) w.f64(v);
  }
  w.u32(crc32_of(w.bytes()));
  return w.take();
}

inline TrainedModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < kModelMagic.size() + 1 || bytes.substr(0, kModelMagic.size()) != kModelMagic)
    throw ModelFormatError("not a model file (bad magic)");
  const auto version = static_cast<std::uint8_t>(bytes[kModelMagic.size()]);
  if (version != kModelFormatVersion)
    throw ModelFormatError("unsupported model format version " + std::to_string(version) + " (expected " +
                           std::to_string(kModelFormatVersion) + ")");
  if (bytes.size() < kModelMagic.size() + 1 + 4) throw ModelFormatError("model file checksum mismatch (truncated)");
  const auto body = bytes.substr(0, bytes.size() - 4);
  ByteReader tail(bytes.substr(bytes.size() - 4));
  if (tail.u32() != crc32_of(body)) throw ModelFormatError("model file checksum mismatch");

  try {
    ByteReader r(body);
    r.raw(kModelMagic.size() + 1);
    TrainedModel m;
    const auto algo = r.u8();
    if (algo > static_cast<std::uint8_t>(Algorithm::NuSVC)) throw ModelFormatError("unknown algorithm id");
    m.algorithm = static_cast<Algorithm>(algo);
    const auto mode = r.u8();
    if (mode > 1) throw ModelFormatError("unknown feature mode");
    m.feature_mode = static_cast<FeatureMode>(mode);
    m.converged = r.u8() != 0;
    const auto n_labels = r.u32();
    for (std::uint32_t i = 0; i < n_labels; ++i) {
      const auto id = r.u8();
      if (id >= kAllLabels.size()) throw ModelFormatError("unknown label id");
      m.labels.push_back(static_cast<Label>(id));
    }
    m.vocabulary = std::make_shared<const Vocabulary>(Vocabulary::from_json(nlohmann::json::parse(r.blob())));
    m.metadata = nlohmann::ordered_json::parse(r.blob());
    for (auto* table : {&m.weights, &m.bias, &m.absent}) {
      const auto n = r.u64();
      if (n > r.remaining() / 8) throw ModelFormatError("parameter table overruns file");
      table->resize(static_cast<std::size_t>(n));
      for (auto& v : *table) v = r.f64();
    }
    if (r.remaining() != 0) throw ModelFormatError("trailing bytes in model file");
    m.finalize();
    return m;
  } catch (const ModelFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelFormatError(std::string("corrupt model file: ") + e.what());
  }
}

inline void save_model(const TrainedModel& m, const std::filesystem::path& path) {
  atomic_write(path, serialize_model(m));
}

inline TrainedModel load_model(const std::filesystem::path& path) { return deserialize_model(read_file(path)); }

}  // namespace revlens
