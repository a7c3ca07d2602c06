#pragma once

#include <stdexcept>
#include <string>

namespace klsf {

/// Invalid input: bad parameters, malformed literals, incompatible operands.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A self-check failed (e.g. a generator emitted a set its own verifier rejects).
/// Indicates an implementation bug, never a mathematical finding.
class CheckFailure : public std::logic_error {
 public:
  explicit CheckFailure(const std::string& what) : std::logic_error(what) {}
};

/// The hypotheses under which a criterion is sound do not hold.
class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

/// The requested computation is outside the supported range (dimension, size limit).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace klsf
