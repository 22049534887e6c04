#ifndef DMF_IO_HPP
#define DMF_IO_HPP

#include <string>

#include "dmf/poly.hpp"

namespace dmf {

/// Syntax or range error in polynomial text, with a 0-based input position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        pos(position) {}
  size_t pos;
};

/// Parses either expression form ("t^3+2*t+1", "(1+2*u)*t+u") or comma-
/// separated coefficient form, low-to-high ("1,2,0,1"). The variable is t, and
/// u denotes the extension generator. Integer literals must be < p.
Poly parse_poly(const Field* f, const std::string& text);

/// Canonical printing (delegates to Poly::to_string); print/parse round-trips.
std::string print_poly(const Poly& p);

}  // namespace dmf

#endif
