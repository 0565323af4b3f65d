#pragma once

#include <stdexcept>
#include <string>

namespace rescon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (non-square, length mismatch, ...).
class DimensionError : public Error {
public:
  using Error::Error;
};

class GraphError : public Error {
public:
  enum class Kind { TooFewNodes, SelfLoop, IndexOutOfRange };

  GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// A standing assumption of an analysis does not hold for the input
/// (disconnected graph, non-positive gain, indefinite damping matrix, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed input file. `line` is 1-based; 0 when no line applies.
class ParseError : public Error {
public:
  ParseError(std::string file, std::size_t line, const std::string& msg)
      : Error(format(file, line, msg)), file_(std::move(file)), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

private:
  static std::string format(const std::string& file, std::size_t line, const std::string& msg) {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + msg;
  }

  std::string file_;
  std::size_t line_;
};

/// Integration produced a non-finite state.
class NumericalError : public Error {
public:
  NumericalError(double time, const std::string& what) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace rescon
