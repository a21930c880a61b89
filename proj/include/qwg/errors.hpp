#pragma once

#include <stdexcept>
#include <string>

namespace qwg {

/// Physics-level precondition violation (bad argument values).
class domain_error : public std::invalid_argument {
  public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Structural problem with a run configuration (grids, schemas, CFL, files).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A solver detected that its own output can no longer be trusted and stopped.
class numerical_abort : public std::runtime_error {
  public:
    explicit numerical_abort(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qwg
