// SPDX-License-Identifier: Apache-2.0
// Error taxonomy shared by all modules. Precondition violations throw
// std::invalid_argument; the remaining classes separate algorithm outcomes
// that callers may want to catch individually (the CLI maps them to exit
// codes: usage errors to 1, violated bounds and certificates to 2).

#pragma once

#include <stdexcept>
#include <string>

namespace jw {

// A size cap protecting desk-scale operation was exceeded.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A heuristic search exhausted its retry budget.
class SearchFailed : public std::runtime_error {
public:
  explicit SearchFailed(const std::string& what) : std::runtime_error(what) {}
};

// A guaranteed invariant failed; signals an implementation bug or a
// tampered certificate, never a legitimate input condition.
class InvariantViolation : public std::logic_error {
public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A verified bound or certificate check failed on honest input.
class BoundViolation : public std::runtime_error {
public:
  explicit BoundViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jw
