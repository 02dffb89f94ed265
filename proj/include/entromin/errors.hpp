#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entromin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an entropy, derivative, or link function.
struct DomainError : Error {
  using Error::Error;
};

// Invalid grid request (bad endpoints, too few nodes, nonpositive weights).
struct BadGrid : Error {
  using Error::Error;
};

// Grid function length does not match the measure it is paired with.
struct LengthMismatch : Error {
  using Error::Error;
};

struct BadVariance : Error {
  using Error::Error;
};

// Moment targets admit no feasible density (includes the boundary case).
struct InfeasibleTargets : Error {
  using Error::Error;
};

// Constraint functions are numerically dependent on the given grid.
struct RankDeficientBasis : Error {
  using Error::Error;
};

// Multipliers left the domain of the link function at a specific node.
struct LinkDomainError : DomainError {
  LinkDomainError(const std::string& msg, std::size_t node_index)
      : DomainError(msg), node(node_index) {}
  std::size_t node;
};

// No admissible starting multipliers for the requested strategy.
struct InitFailure : Error {
  using Error::Error;
};

// The primal oracle could not produce a strictly interior feasible start.
struct NoInteriorPoint : Error {
  using Error::Error;
};

struct NotConverged : Error {
  using Error::Error;
};

// Problem description file is syntactically or semantically invalid.
struct SpecParseError : Error {
  using Error::Error;
};

}  // namespace entromin
