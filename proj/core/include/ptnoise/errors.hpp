#pragma once

#include <stdexcept>
#include <string>

namespace ptnoise {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

// Matrix inversion failed or the condition number exceeded the cap.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

// One of the N x N blocks needed by the block-inversion route is singular.
class SingularBlock : public Error {
 public:
  explicit SingularBlock(std::string block)
      : Error("singular block: " + block), block_(std::move(block)) {}
  const std::string& block() const noexcept { return block_; }

 private:
  std::string block_;
};

// The interface between two joined regions is (numerically) closed: the
// composite has a bound state at this energy.
class NearResonance : public Error {
 public:
  explicit NearResonance(double condition)
      : Error("interface solve near resonance, condition number " +
              std::to_string(condition)),
        condition_(condition) {}
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

class NotPassive : public Error {
 public:
  using Error::Error;
};

class FitFailed : public Error {
 public:
  using Error::Error;
};

class UnderResolved : public Error {
 public:
  using Error::Error;
};

class RegimeViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ptnoise
