#pragma once

// One structured document per run. The text form is rendered from the JSON
// document, so both carry the same certificates.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tiltlab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "tiltlab.report/1";

const char* version();

// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

struct Check {
  std::string id;
  bool passed = false;
  Json certificate;  // any JSON value; null when there is nothing to show
  bool operator==(const Check&) const = default;
};

struct InputRecord {
  std::string name;
  std::string sha256;
  bool operator==(const InputRecord&) const = default;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<InputRecord>& inputs() const { return inputs_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  const Json& bounds() const { return bounds_; }
  const Json& result() const { return result_; }
  bool passed() const;

  void add_input(std::string name, std::string_view contents);
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_bound(const std::string& key, Json value) { bounds_[key] = std::move(value); }
  void add_check(std::string id, bool passed, Json certificate = nullptr);
  void set_result(const std::string& key, Json value) { result_[key] = std::move(value); }

  Json to_json() const;
  // Throws ParseError on a document that is not a tiltlab report, and
  // ValidationError when the stored verdict disagrees with the checks.
  static Report from_json(const Json& doc);
  static Report parse(std::string_view text);

  std::string render_json() const;  // pretty-printed, trailing newline
  std::string render_text() const;

  bool operator==(const Report&) const = default;

 private:
  std::string command_;
  std::string version_ = tiltlab::version();
  std::vector<InputRecord> inputs_;
  std::optional<std::uint64_t> seed_;
  Json bounds_ = Json::object();
  std::vector<Check> checks_;
  Json result_ = Json::object();
};

}  // namespace tiltlab
