#pragma once

#include <stdexcept>
#include <string>

namespace netmon {

// Construction of a static model failed (bad reference, duplicate name or
// anchor, malformed spec document).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configuration input (tables file, trace line, CLI flag value) could not
// be parsed or is semantically out of range.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An API was called in a way its contract forbids (handler on a Transfer
// stage, chronology check over mixed packet ids, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A run did not quiesce: some thing exceeded its tick budget.
struct LivelockError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace netmon
