#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cycform/polynomial.hpp"
#include "cycform/wedge.hpp"

namespace cycform {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// x, y, z for d <= 3, otherwise x1..xd.
std::string variable_name(int dim, int axis);

// Grammar shared by all three parsers:
//   expr   := [+|-] term { (+|-) term }
//   term   := factor { [*|^|<space>] factor }
//   factor := int[/int] | var[^int] | '(' expr ')'[^int] | gen
// var is x,y,z (first three axes) or x1..xd; gen is ∂v or Dv for
// polyvectors and dv for forms. Juxtaposed generators are wedged in order,
// so "2*x^2*y ∂x^∂z" is 2x^2y d/dx^d/dz.
Polynomial parse_polynomial(std::string_view text, int dim);
PolyVector parse_polyvector(std::string_view text, int dim);
DiffForm parse_form(std::string_view text, int dim);

std::string format(const Polynomial& p);
std::string format(const PolyVector& v);
std::string format(const DiffForm& w);

}  // namespace cycform
