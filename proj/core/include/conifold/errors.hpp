#pragma once

#include <stdexcept>
#include <string>

namespace conifold {

// Parameters outside the supported domain (|q| >= 1, Re z <= 0, zero period...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

class BranchError : public DomainError {
public:
  using DomainError::DomainError;
};

// Series caps too small for the requested order.
class TruncationOrderError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// 1 - a_n b_n = 0 somewhere, or a non-invertible tau constant term.
class SingularStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CatastropheError : public std::runtime_error {
public:
  CatastropheError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace conifold
