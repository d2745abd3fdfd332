#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

namespace critters::service {

// Append-only JSON-lines file. Each record is written with a single write(2)
// on an O_APPEND descriptor.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path file);
  ~EventLog();

  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  void append(const nlohmann::json& record);
  std::vector<nlohmann::json> read_all() const;

  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
  int fd_ = -1;
  std::mutex mu_;
};

// Reads a log without opening it for writing. Missing file reads as empty;
// a torn final line (crash mid-append) is ignored.
std::vector<nlohmann::json> read_log(const std::filesystem::path& file);

}  // namespace critters::service
