#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hxray {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  InvalidArgument = 1,
  Dimension = 2,
  Domain = 3,
  Quadrature = 4,
  Io = 5,
  Config = 6,
  Incompatible = 7,
  NotInvertible = 8,
};

// Carries a machine-readable reason alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char *reason() const;

 private:
  ErrorCode code_;
};

inline const char *Error::reason() const {
  switch (code_) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Dimension: return "dimension_mismatch";
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::Quadrature: return "quadrature_budget";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Config: return "config_error";
    case ErrorCode::Incompatible: return "incompatible_pair";
    case ErrorCode::NotInvertible: return "not_invertible";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string &msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string &msg) {
  if (!cond) fail(code, msg);
}

// Execution knobs shared by the heavy loops.
struct Exec {
  int threads = 1;
};

// Static contiguous chunks; callers write into per-index slots and reduce in
// index order afterwards, so results do not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t count, const Exec &ex, Fn &&fn) {
  std::size_t nt = static_cast<std::size_t>(std::max(1, ex.threads));
  nt = std::min(nt, count);
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::exception_ptr err;
  std::mutex mu;
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = count * t / nt, hi = count * (t + 1) / nt;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace hxray
