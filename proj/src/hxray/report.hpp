#pragma once

#include "hxray/fock.hpp"

#include <json.hpp>

namespace hxray::report {

using json = nlohmann::ordered_json;

// Serializes with insertion-ordered keys and every float printed as %.17g.
std::string dump(const json &j, int indent = 2);

json to_json(const Vec &v);
json to_json(cplx z);
json to_json(const CMat &m);  // rows of [re, im] pairs

struct Assertion {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<=", ">=", "==" or "flag"
  std::string config_key;
  bool pass = false;
};

class Report {
 public:
  Report(std::string subcommand, json config);

  json &results() { return results_; }
  const std::vector<Assertion> &assertions() const { return assertions_; }

  bool check_le(const std::string &name, double value, double tol, const std::string &key);
  bool check_ge(const std::string &name, double value, double tol, const std::string &key);
  // value must equal expected within tol
  bool check_eq(const std::string &name, double value, double expected, double tol, const std::string &key);
  bool check_flag(const std::string &name, bool ok, const std::string &key);
  void add_artifact(const std::string &path);
  void set_error(const std::string &reason, const std::string &message);

  bool passed() const;
  int exit_code() const;
  // Complete report; `timestamp` goes in the final field.
  json to_json(const std::string &timestamp) const;

 private:
  std::string subcommand_;
  json config_;
  json results_ = json::object();
  std::vector<Assertion> assertions_;
  std::vector<std::string> artifacts_;
  std::string error_reason_, error_message_;
};

std::string utc_timestamp();
void write_text(const std::string &path, const std::string &text);

}  // namespace hxray::report
