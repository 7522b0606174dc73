#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmlp {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A training step produced a non-finite parameter.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::size_t iteration, const std::string& context = {})
      : std::runtime_error("divergence at iteration " + std::to_string(iteration) +
                           (context.empty() ? std::string{} : " (" + context + ")")),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline void require_dims(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace detail

}  // namespace qmlp
