#pragma once

#include <string_view>

namespace spincat {

/// Evaluates an arithmetic expression over numbers and the constant `pi`:
/// + - * /, parentheses and unary minus, e.g. "2*pi", "-pi/3", "(1+2)/4".
/// Throws InvalidArgument on malformed input or a non-finite result.
double evaluate_expression(std::string_view text);

}  // namespace spincat
