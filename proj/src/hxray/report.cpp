#include "hxray/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace hxray::report {

namespace {

void put_string(std::string &out, const std::string &s) {
  out += json(s).dump();
}

void put(std::string &out, const json &j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string end(static_cast<std::size_t>(indent * depth), ' ');
  const char *nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        put_string(out, it.key());
        out += indent > 0 ? ": " : ":";
        put(out, it.value(), indent, depth + 1);
      }
      out += nl;
      out += end + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays stay on one line
      bool flat = j.size() <= 4;
      for (const auto &e : j) flat = flat && e.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          put(out, j[i], 0, 0);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        put(out, j[i], indent, depth + 1);
      }
      out += nl;
      out += end + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json &j, int indent) {
  std::string out;
  put(out, j, indent, 0);
  return out;
}

json to_json(const Vec &v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMat &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Report::Report(std::string subcommand, json config)
    : subcommand_(std::move(subcommand)), config_(std::move(config)) {}

bool Report::check_le(const std::string &name, double value, double tol, const std::string &key) {
  const bool ok = value <= tol;
  assertions_.push_back({name, value, tol, "<=", key, ok});
  return ok;
}

bool Report::check_ge(const std::string &name, double value, double tol, const std::string &key) {
  const bool ok = value >= tol;
  assertions_.push_back({name, value, tol, ">=", key, ok});
  return ok;
}

bool Report::check_eq(const std::string &name, double value, double expected, double tol,
                      const std::string &key) {
  const bool ok = std::abs(value - expected) <= tol;
  assertions_.push_back({name, value, tol, "== " + dump(json(expected), 0), key, ok});
  return ok;
}

bool Report::check_flag(const std::string &name, bool ok, const std::string &key) {
  assertions_.push_back({name, ok ? 1.0 : 0.0, 1.0, "flag", key, ok});
  return ok;
}

void Report::add_artifact(const std::string &path) { artifacts_.push_back(path); }

void Report::set_error(const std::string &reason, const std::string &message) {
  error_reason_ = reason;
  error_message_ = message;
}

bool Report::passed() const {
  if (!error_reason_.empty()) return false;
  for (const auto &a : assertions_)
    if (!a.pass) return false;
  return true;
}

int Report::exit_code() const { return passed() ? 0 : 1; }

json Report::to_json(const std::string &timestamp) const {
  json j;
  j["tool"] = "hxray";
  j["format"] = 1;
  j["subcommand"] = subcommand_;
  j["config"] = config_;
  j["results"] = results_;
  json as = json::array();
  for (const auto &a : assertions_) {
    json e;
    e["name"] = a.name;
    e["value"] = a.value;
    e["relation"] = a.relation;
    e["tolerance"] = a.tolerance;
    e["config_key"] = a.config_key;
    e["pass"] = a.pass;
    as.push_back(e);
  }
  j["assertions"] = as;
  j["artifacts"] = artifacts_;
  if (!error_reason_.empty()) j["error"] = {{"reason", error_reason_}, {"message", error_message_}};
  j["status"] = passed() ? "pass" : "fail";
  j["exit_code"] = exit_code();
  j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::Io, "cannot open " + path + " for writing");
  f << text;
  require(static_cast<bool>(f), ErrorCode::Io, "write to " + path + " failed");
}

}  // namespace hxray::report
