// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef QMETER_TOOLS_EXPRESSION_HPP_
#define QMETER_TOOLS_EXPRESSION_HPP_

#include <string_view>

namespace qmeter::cli {

/// Evaluates a real constant such as "pi/6", "-2*(1+0.5)" or "1e-3".
/// Grammar: numbers, the constant pi, + - * /, unary minus, parentheses.
/// Throws std::invalid_argument with a short description on bad input.
double evaluate_expression(std::string_view text);

}  // namespace qmeter::cli

#endif  // QMETER_TOOLS_EXPRESSION_HPP_
