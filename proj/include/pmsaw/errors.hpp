#pragma once

#include <stdexcept>
#include <string>

namespace pmsaw {

/// A field of an input record violates a declared invariant.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configuration file failed to parse; message carries line context.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// A numerical routine failed to converge; message carries the residual.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg, double residual = 0.0)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Caller asked for something outside the supported contract.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pmsaw
