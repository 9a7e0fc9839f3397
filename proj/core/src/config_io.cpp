// SPDX-License-Identifier: Apache-2.0
#include "onebit/cli/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace onebit {
namespace {

using nlohmann::json;

/// Reads typed fields out of one JSON object, recording issues under
/// "<prefix><key>".
class FieldReader {
 public:
  FieldReader(const json& obj, std::string prefix, std::vector<ValidationIssue>& issues)
      : obj_(obj), prefix_(std::move(prefix)), issues_(issues) {
    if (!obj_.is_object()) fail("", "must be an object");
  }

  template <typename T>
  void read(const char* key, T& target) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) return fail(key, "must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) return fail(key, "must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned() == false && v.get<std::int64_t>() < 0) return fail(key, "must be nonnegative");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) return fail(key, "must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) return fail(key, "must be a string");
    }
    target = v.get<T>();
  }

  template <typename T>
  void read_optional(const char* key, std::optional<T>& target) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return;
    if (obj_.at(key).is_null()) {
      target.reset();
      return;
    }
    T value{};
    const std::size_t before = issues_.size();
    read(key, value);
    if (issues_.size() == before) target = value;
  }

  template <typename T>
  void read_list(const char* key, std::vector<T>& target) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array()) return fail(key, "must be an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
      if (!ok) return fail(std::string(key) + "[" + std::to_string(i) + "]", "must be a number");
      out.push_back(v[i].get<T>());
    }
    target = std::move(out);
  }

  [[nodiscard]] const json* child(const char* key) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return nullptr;
    return &obj_.at(key);
  }

  /// Reports keys that no read touched.
  void finish() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) fail(key, "unknown key");
    }
  }

  void fail(const std::string& key, const std::string& message) {
    issues_.push_back({prefix_ + key, message});
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<ValidationIssue>& issues_;
  std::set<std::string> seen_;
};

EqualizerSpec parse_equalizer(const json& doc, const std::string& prefix, int memory,
                              std::vector<ValidationIssue>& issues) {
  EqualizerSpec spec;
  spec.overlap = 2 * memory;
  FieldReader r(doc, prefix, issues);
  std::string kind;
  r.read("kind", kind);
  if (kind.empty()) {
    r.fail("kind", "is required");
  } else if (auto k = parse_equalizer_kind(kind)) {
    spec.kind = *k;
  } else {
    r.fail("kind", "unknown equalizer '" + kind + "'");
  }
  spec.label = kind;
  r.read("name", spec.label);
  r.read("block_length", spec.block_length);
  r.read("overlap", spec.overlap);
  r.read("max_iterations", spec.policy.max_iterations);
  r.read("tolerance", spec.policy.rel_tolerance);
  r.read("early_stop", spec.policy.early_stop);
  std::string init = to_string(spec.policy.initializer);
  r.read("initializer", init);
  if (auto i = parse_initializer(init)) {
    spec.policy.initializer = *i;
  } else {
    r.fail("initializer", "unknown initializer '" + init + "'");
  }
  r.finish();
  return spec;
}

}  // namespace

std::optional<ExperimentConfig> parse_config(const json& doc, std::vector<ValidationIssue>& issues) {
  const std::size_t before = issues.size();
  ExperimentConfig cfg;
  FieldReader top(doc, "", issues);

  if (const json* sys = top.child("system")) {
    FieldReader r(*sys, "system.", issues);
    SystemConfig& s = cfg.system;
    r.read("users", s.users);
    r.read("antennas", s.antennas);
    r.read("channel_memory", s.channel_memory);
    r.read("frame_length", s.frame_length);
    r.read("noise_variance", s.noise_variance);
    r.read_optional("sample_period_ns", s.sample_period_ns);
    r.read("quantize", s.quantize);
    r.read("noiseless", s.noiseless);
    r.finish();
  }
  top.read("realizations", cfg.realizations);
  top.read_list("eb_n0_db", cfg.eb_n0_db);
  top.read("seed", cfg.seed);
  top.read_list("fixed_iterations", cfg.fixed_iterations);

  if (const json* eqs = top.child("equalizers")) {
    if (!eqs->is_array()) {
      top.fail("equalizers", "must be an array");
    } else {
      for (std::size_t i = 0; i < eqs->size(); ++i) {
        cfg.equalizers.push_back(parse_equalizer((*eqs)[i], "equalizers[" + std::to_string(i) + "].",
                                                 cfg.system.channel_memory, issues));
      }
    }
  }
  if (const json* cx = top.child("complexity")) {
    FieldReader r(*cx, "complexity.", issues);
    r.read_list("block_lengths", cfg.complexity.block_lengths);
    r.read("iterations", cfg.complexity.iterations);
    r.read_optional("overlap", cfg.complexity.overlap);
    r.finish();
  }
  top.finish();
  if (issues.size() != before) return std::nullopt;
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  const SystemConfig& s = cfg.system;
  json doc;
  doc["system"] = {
      {"users", s.users},
      {"antennas", s.antennas},
      {"channel_memory", s.channel_memory},
      {"frame_length", s.frame_length},
      {"noise_variance", s.noise_variance},
      {"sample_period_ns", s.sample_period_ns ? json(*s.sample_period_ns) : json(nullptr)},
      {"quantize", s.quantize},
      {"noiseless", s.noiseless},
  };
  json eqs = json::array();
  for (const EqualizerSpec& e : cfg.equalizers) {
    eqs.push_back({
        {"name", e.label},
        {"kind", to_string(e.kind)},
        {"block_length", e.block_length},
        {"overlap", e.overlap},
        {"max_iterations", e.policy.max_iterations},
        {"tolerance", e.policy.rel_tolerance},
        {"early_stop", e.policy.early_stop},
        {"initializer", to_string(e.policy.initializer)},
    });
  }
  doc["equalizers"] = std::move(eqs);
  doc["realizations"] = cfg.realizations;
  doc["eb_n0_db"] = cfg.eb_n0_db;
  doc["seed"] = cfg.seed;
  doc["fixed_iterations"] = cfg.fixed_iterations;
  doc["complexity"] = {
      {"block_lengths", cfg.complexity.block_lengths},
      {"iterations", cfg.complexity.iterations},
      {"overlap", cfg.complexity.overlap ? json(*cfg.complexity.overlap) : json(nullptr)},
  };
  return doc;
}

std::optional<ExperimentConfig> load_config(const std::filesystem::path& path,
                                            std::vector<ValidationIssue>& issues) {
  std::ifstream in(path);
  if (!in) {
    issues.push_back({"config", "cannot open '" + path.string() + "'"});
    return std::nullopt;
  }
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    issues.push_back({"config", "'" + path.string() + "' is not valid JSON"});
    return std::nullopt;
  }
  // A run manifest carries the resolved config.
  if (doc.is_object() && doc.contains("schema_version") && doc.contains("config")) {
    doc = doc.at("config");
  }
  auto cfg = parse_config(doc, issues);
  if (!cfg) return std::nullopt;
  auto problems = validate(*cfg);
  if (!problems.empty()) {
    issues.insert(issues.end(), problems.begin(), problems.end());
    return std::nullopt;
  }
  return cfg;
}

json issues_to_json(const std::vector<ValidationIssue>& issues) {
  json list = json::array();
  for (const auto& i : issues) list.push_back({{"field", i.field}, {"message", i.message}});
  return {{"errors", list}};
}

}  // namespace onebit
