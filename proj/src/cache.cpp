#include "qhv/cache.hpp"

#include <cstdio>
#include <fstream>

#include "qhv/error.hpp"
#include "qhv/prime_field.hpp"

namespace qhv {

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;  // a missing file is an empty cache
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() ||
        !j.contains("record")) {
      warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": skipping corrupt cache line");
      continue;
    }
    records_[j["key"].get<std::string>()] = j["record"];
  }
}

std::optional<Json> ResultCache::get(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::put(const std::string& key, const Json& record) {
  std::lock_guard lock(mu_);
  Json line;
  line["key"] = key;
  line["record"] = record;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::Io, "cannot append to cache " + path_);
  out << line.dump() << "\n";
  if (!out) throw Error(ErrorCode::Io, "write to cache " + path_ + " failed");
  records_[key] = record;
}

std::string ResultCache::key(const std::string& command, const std::string& canonical_input,
                             const ClassifyConfig& cfg) {
  std::string material = command + "|" + canonical_input + "|p=" + std::to_string(cfg.field.p) +
                         "|seed=" + std::to_string(cfg.field.seed) +
                         "|attempts=" + std::to_string(cfg.field.attempts) +
                         "|max_cols=" + std::to_string(cfg.max_cols) +
                         "|axioms=" + std::to_string(cfg.use_axioms) +
                         "|reduction=" + std::to_string(cfg.use_reduction) +
                         "|rank=" + std::to_string(cfg.use_rank) + "|version=" QHV_VERSION;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(material)));
  return buf;
}

}  // namespace qhv
