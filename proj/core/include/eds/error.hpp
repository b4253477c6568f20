#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eds {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text does not conform to the expression grammar.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Operands live on different coordinate charts.
struct ChartMismatch : Error {
  using Error::Error;
};

// Division by zero, unbound variable, pole at an evaluation point, ...
struct DomainError : Error {
  using Error::Error;
};

// A pivot, frame, or rank degenerates on a subvariety; carries the
// vanishing polynomial when one is known.
struct DegenerateError : Error {
  std::string locus;
  explicit DegenerateError(const std::string& what, std::string locus_poly = "")
      : Error(locus_poly.empty() ? what : what + " [locus: " + locus_poly + "]"),
        locus(std::move(locus_poly)) {}
};

}  // namespace eds
