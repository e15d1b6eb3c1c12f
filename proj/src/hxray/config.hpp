#pragma once

#include "hxray/algebra.hpp"
#include "hxray/quadrature.hpp"
#include "hxray/test_function.hpp"

#include <json.hpp>

#include <cstdint>
#include <set>

namespace hxray::config {

using json = nlohmann::ordered_json;

// Parses text; syntax errors carry the line and column.
json parse_text(const std::string &text);

// Typed access to one JSON object. Every key read is recorded; finish() rejects
// the rest. Errors name the full field path.
class Fields {
 public:
  Fields(const json &j, std::string path);

  const std::string &path() const { return path_; }
  bool has(const std::string &key) const;
  std::string key_path(const std::string &key) const { return path_ + "/" + key; }

  double number(const std::string &key);
  double number(const std::string &key, double def);
  double positive(const std::string &key);
  double positive(const std::string &key, double def);
  int integer(const std::string &key);
  int integer(const std::string &key, int def, int lo = INT32_MIN, int hi = INT32_MAX);
  std::uint64_t u64(const std::string &key, std::uint64_t def);
  bool boolean(const std::string &key, bool def);
  std::string string(const std::string &key, const std::string &def,
                     const std::vector<std::string> &choices = {});
  Vec vec(const std::string &key, int size = -1);
  Vec vec(const std::string &key, const Vec &def);
  std::vector<Vec> vec_list(const std::string &key, int size = -1);
  std::vector<double> numbers(const std::string &key, const std::vector<double> &def);
  std::vector<int> integers(const std::string &key, const std::vector<int> &def);
  cplx complex(const std::string &key, cplx def);
  Fields object(const std::string &key);
  std::vector<Fields> objects(const std::string &key);
  const json &raw(const std::string &key);

  void finish() const;
  [[noreturn]] void error(const std::string &key, const std::string &what) const;

 private:
  const json &at(const std::string &key);
  const json *j_;
  std::string path_;
  std::set<std::string> seen_;
};

struct RunConfig {
  json raw;
  algebra::HTypeStructure structure;
  int L = 8;
  quad::Quadrature quadrature;
  std::string out_dir = "hxray-out";
  std::string report_name = "report.json";
  bool emit_matrices = false;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Validates the structure, basis, quadrature and output blocks. The experiment
// block is returned through `experiment` for the subcommand to consume.
RunConfig load(const json &j, json &experiment);

algebra::HTypeStructure parse_structure(Fields &f);
quad::Quadrature parse_quadrature(Fields &f);
// Either {"gaussian": {"a":..,"b":..}} or {"products": [...]}.
transform::TestFunction parse_function(Fields &f, const algebra::HTypeStructure &S);

}  // namespace hxray::config
