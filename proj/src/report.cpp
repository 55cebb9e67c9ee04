#include "tiltlab/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <sstream>

#include "tiltlab/error.hpp"

#ifndef TILTLAB_VERSION
#define TILTLAB_VERSION "0.0.0"
#endif

namespace tiltlab {

const char* version() { return TILTLAB_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantBreach("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

void Report::add_input(std::string name, std::string_view contents) {
  inputs_.push_back({std::move(name), sha256_hex(contents)});
}

void Report::add_check(std::string id, bool passed, Json certificate) {
  checks_.push_back({std::move(id), passed, std::move(certificate)});
}

Json Report::to_json() const {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command_;
  Json prov;
  prov["tool"] = "tiltlab";
  prov["version"] = version_;
  prov["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  prov["bounds"] = bounds_;
  Json inputs = Json::array();
  for (const auto& in : inputs_) inputs.push_back({{"name", in.name}, {"sha256", in.sha256}});
  prov["inputs"] = inputs;
  doc["provenance"] = prov;
  Json checks = Json::array();
  for (const auto& c : checks_) checks.push_back({{"id", c.id}, {"passed", c.passed}, {"certificate", c.certificate}});
  doc["checks"] = checks;
  doc["result"] = result_;
  doc["passed"] = passed();
  return doc;
}

Report Report::from_json(const Json& doc) {
  try {
    if (!doc.is_object() || doc.at("schema") != kReportSchema) throw ParseError("not a " + std::string(kReportSchema) + " document");
    Report r(doc.at("command").get<std::string>());
    const Json& prov = doc.at("provenance");
    r.version_ = prov.at("version").get<std::string>();
    if (!prov.at("seed").is_null()) r.seed_ = prov.at("seed").get<std::uint64_t>();
    r.bounds_ = prov.at("bounds");
    if (!r.bounds_.is_object()) throw ParseError("provenance.bounds must be an object");
    for (const auto& in : prov.at("inputs")) r.inputs_.push_back({in.at("name").get<std::string>(), in.at("sha256").get<std::string>()});
    for (const auto& c : doc.at("checks")) r.checks_.push_back({c.at("id").get<std::string>(), c.at("passed").get<bool>(), c.at("certificate")});
    r.result_ = doc.at("result");
    if (doc.at("passed").get<bool>() != r.passed()) throw ValidationError("report verdict disagrees with its checks");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

Report Report::parse(std::string_view text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("report is not valid JSON");
  return from_json(doc);
}

std::string Report::render_json() const { return to_json().dump(2) + "\n"; }

namespace {

bool is_scalar(const Json& v) { return !v.is_structured(); }

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void render_value(std::ostringstream& out, const Json& v, int indent);

void render_entry(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  std::string pad(indent, ' ');
  bool flat_array = v.is_array() && std::all_of(v.begin(), v.end(), is_scalar);
  if (is_scalar(v)) {
    out << pad << key << ": " << scalar_text(v) << "\n";
  } else if (flat_array) {
    out << pad << key << ": ";
    if (v.empty()) out << "[]";
    bool first = true;
    for (const auto& x : v) out << (first ? "" : ", ") << scalar_text(x), first = false;
    out << "\n";
  } else {
    out << pad << key << ":\n";
    render_value(out, v, indent + 2);
  }
}

void render_value(std::ostringstream& out, const Json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) render_entry(out, k, x, indent);
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (is_scalar(x)) out << pad << "- " << scalar_text(x) << "\n";
      else {
        // First line of the nested block carries the list marker.
        std::ostringstream item;
        render_value(item, x, indent + 2);
        std::string text = item.str();
        if (text.size() >= pad.size() + 2) text.replace(pad.size(), 2, "- ");
        out << text;
      }
    }
  } else {
    out << pad << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string Report::render_text() const {
  Json doc = to_json();
  const Json& prov = doc["provenance"];
  std::ostringstream out;
  out << "tiltlab " << prov["version"].get<std::string>() << "  " << doc["command"].get<std::string>() << "\n";
  for (const auto& in : prov["inputs"])
    out << "input " << in["name"].get<std::string>() << "  sha256 " << in["sha256"].get<std::string>() << "\n";
  if (!prov["seed"].is_null()) out << "seed " << prov["seed"].dump() << "\n";
  for (const auto& [k, v] : prov["bounds"].items()) out << "bound " << k << " = " << scalar_text(v) << "\n";
  if (!doc["checks"].empty()) out << "\n";
  for (const auto& c : doc["checks"]) {
    const Json& cert = c["certificate"];
    bool skipped = cert.is_object() && cert.contains("status") && cert["status"] == "skipped";
    out << (skipped ? "SKIP  " : c["passed"].get<bool>() ? "PASS  " : "FAIL  ") << c["id"].get<std::string>() << "\n";
    if (!c["certificate"].is_null()) render_value(out, c["certificate"], 6);
  }
  if (!doc["result"].empty()) {
    out << "\nresult\n";
    render_value(out, doc["result"], 2);
  }
  out << "\nverdict: " << (doc["passed"].get<bool>() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace tiltlab
