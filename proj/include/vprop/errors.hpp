#pragma once

#include <stdexcept>
#include <string>

namespace vprop {

// Base class for every failure the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Cholesky (or anything built on it) hit a non-positive pivot.
class NotPdError : public Error {
public:
  NotPdError(const std::string& where, int pivot)
      : Error(where + ": matrix is not positive definite (pivot " +
              std::to_string(pivot) + " <= tolerance)"),
        pivot_(pivot) {}
  int pivot() const { return pivot_; }

private:
  int pivot_;
};

// A precision entry became zero or negative where the update needs it positive.
class NonPositivePrecisionError : public Error {
public:
  NonPositivePrecisionError(const std::string& where, int coordinate)
      : Error(where + ": non-positive precision at coordinate " +
              std::to_string(coordinate)),
        coordinate_(coordinate) {}
  int coordinate() const { return coordinate_; }

private:
  int coordinate_;
};

class SingularMatrixError : public Error {
public:
  explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

// An objective was asked for a derivative it does not provide.
class CapabilityError : public Error {
public:
  explicit CapabilityError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class ConfigError : public Error {
public:
  ConfigError(const std::string& key_path, const std::string& msg)
      : Error("config key '" + key_path + "': " + msg), key_(key_path) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

}  // namespace vprop
