#pragma once

#include <string_view>

#include "fracwave/expr.hpp"

namespace fracwave::symexpr {

/// Parses an expression in the toolkit grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' ['-'] integer)?
///   base   := number | symbol | func '(' expr (',' expr)* ')'
///           | 'D' '(' expr ',' symbol ',' integer ')' | '(' expr ')' | '-' factor
///
/// Decimal literals are read exactly ("0.5" is 1/2). Throws ParseError with
/// the byte offset of the first offending character.
Expr parse(std::string_view text);

}  // namespace fracwave::symexpr
