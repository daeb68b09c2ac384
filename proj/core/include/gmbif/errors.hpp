#pragma once

#include <stdexcept>
#include <string>

namespace gmbif {

// Bad user input: non-positive or non-finite parameters, malformed options.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside the open half-plane v > 0.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A normal-form step needs a coefficient that is (numerically) zero.
class PipelineGuard : public std::runtime_error {
public:
  PipelineGuard(std::string stage, std::string what)
      : std::runtime_error("pipeline guard at stage " + stage + ": " + what),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

} // namespace gmbif
