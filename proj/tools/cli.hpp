#pragma once

// Command dispatch for the catquot binary, callable in-process.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace catquot::cli {

enum class Format { Text, Kv };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;  // --filter, --model, ... without the dashes
  std::vector<int> probes{0, 1, 2, 3};
  std::uint64_t cap = 1'000'000;
  std::string output;  // empty: the caller prints
  Format format = Format::Text;
};

enum Status { Pass = 0, CheckFailed = 1, InputError = 2, CapExceeded = 3 };

// Lines in insertion order; a body (a document in the input format) follows
// the keys, which are then written as comments.
class Report {
 public:
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  template <class Int>
    requires std::is_integral_v<Int>
  void add(std::string key, Int value) {
    add(std::move(key), std::to_string(value));
  }
  void set_body(std::string body) { body_ = std::move(body); }
  std::string render(Format f) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string body_;
};

struct RunResult {
  Status status = Pass;
  std::string output;
};

// Never throws for library errors; they become InputError, CheckFailed or
// CapExceeded with an `error` key. Throws std::invalid_argument on an
// invalid config.
RunResult run(const RunConfig& config);

const std::vector<std::string>& commands();

}  // namespace catquot::cli
