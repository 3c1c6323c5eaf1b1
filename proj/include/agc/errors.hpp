#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agc {

// Base for all recoverable input/computation failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class UndefinedName : public Error {
 public:
  explicit UndefinedName(std::string name) : Error("undefined species name '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NotPolynomialInSelf : public Error {
 public:
  NotPolynomialInSelf(const std::string& name, const std::string& why)
      : Error("equation for '" + name + "' is not a polynomial self-recursion: " + why) {}
};

class NonWellFounded : public Error {
 public:
  NonWellFounded(std::string name, std::size_t coefficient)
      : Error("equation for '" + name + "' does not determine a unique formal solution (coefficient " +
              std::to_string(coefficient) + " does not stabilize)"),
        name_(std::move(name)),
        coefficient_(coefficient) {}

  const std::string& name() const { return name_; }
  std::size_t coefficient() const { return coefficient_; }

 private:
  std::string name_;
  std::size_t coefficient_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t n, std::size_t cap)
      : Error("enumeration size " + std::to_string(n) + " exceeds cap " + std::to_string(cap)) {}
};

class InvalidAction : public Error {
 public:
  InvalidAction(std::string g, std::string h, std::string x)
      : Error("invalid action at (" + g + ", " + h + ", " + x + ")"), g_(std::move(g)), h_(std::move(h)), x_(std::move(x)) {}

  const std::string& g() const { return g_; }
  const std::string& h() const { return h_; }
  const std::string& x() const { return x_; }

 private:
  std::string g_, h_, x_;
};

class NotSelfRecursive : public Error {
 public:
  NotSelfRecursive(const std::string& name, const std::string& why)
      : Error("no algebraic curve for '" + name + "': " + why) {}
};

class RootFindingDiverged : public Error {
 public:
  explicit RootFindingDiverged(const std::string& what) : Error("root finding diverged: " + what) {}
};

class SingularAtOne : public Error {
 public:
  explicit SingularAtOne(std::string kind) : Error("z = 1 is a singularity (" + kind + ")"), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class PoleAtOne : public Error {
 public:
  PoleAtOne() : Error("closed form has a pole at z = 1") {}
};

class StepUnderflow : public Error {
 public:
  explicit StepUnderflow(double position) : Error("step size underflow at arclength " + std::to_string(position)) {}
};

class CorrectorDiverged : public Error {
 public:
  explicit CorrectorDiverged(const std::string& where) : Error("Newton corrector diverged " + where) {}
};

}  // namespace agc
