#pragma once

#include <stdexcept>
#include <string>

namespace phitilde {

// Requested table or buffer would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Input is valid but beyond a documented feasibility cap.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phitilde

