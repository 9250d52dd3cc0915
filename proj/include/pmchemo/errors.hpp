#pragma once

#include <stdexcept>
#include <string>

namespace pmchemo {

/// Moment vector outside the realizable set where a closure demands it.
class RealizabilityError : public std::runtime_error {
public:
  explicit RealizabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver breakdown, NaN contamination and the like.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: malformed config, inconsistent model/scenario, bad file.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pmchemo
