/*
 * Copyright 2026 The msq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "msq/expr.hpp"

namespace msq {

/// Tree encoding of the rendered form:
///   {"op":"add"|"mul"|"neg","args":[...]}, {"op":"pow","args":[base],"exp":k},
///   {"sym":"c","idx":3}, {"coeff":["p0","p1","p2","p3"]}.
nlohmann::json expr_to_json(const Expr &e);
/// Throws std::invalid_argument on malformed input.
Expr expr_from_json(const nlohmann::json &j);

/// Compact canonical text; byte sizes of expressions are measured on this.
std::string serialize_expr(const Expr &e);
Expr parse_expr(std::string_view text);

}  // namespace msq
