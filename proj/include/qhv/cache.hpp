#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qhv/classify.hpp"
#include "qhv/report.hpp"

namespace qhv {

/// Append-only JSONL store of report records. The file is read once at
/// construction; later writes go through one mutex-guarded appender.
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  std::optional<Json> get(const std::string& key) const;
  /// Appends one line; throws Io when the file cannot be written.
  void put(const std::string& key, const Json& record);

  /// Corrupt or foreign lines seen while loading.
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return records_.size(); }

  /// Hex FNV-1a of the command, canonical input and every setting that can
  /// change the answer.
  static std::string key(const std::string& command, const std::string& canonical_input,
                         const ClassifyConfig& cfg);

 private:
  std::string path_;
  std::map<std::string, Json> records_;
  std::vector<std::string> warnings_;
  mutable std::mutex mu_;
};

}  // namespace qhv
