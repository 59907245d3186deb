#pragma once

// Text front ends for process terms, formulas and language files.
//
// Process:  P ::= "0" | a "." P | P "+" P | P "||" P | "pi[" n "](" P ")"
//                | "enc{" a,... "}(" P ")" | "theta[" a>b,... "](" P ")"
//                | "lmerge(" P "," P ")" | "(" P ")"
//           "." binds tightest, then "||", then "+"; binary operators are
//           left-associative.
// Formula:  F ::= "T" | "F" | "~" F | "<" a ">" F | F "&" F
//                | "/\(" [F {"," F}] ")" | "(" F ")"
//           "~" and "<a>" bind tighter than "&". A chain of "&" builds one
//           n-ary conjunction.
//
// Actions match [a-z][a-z0-9_]*. When an alphabet is supplied, actions
// outside it are rejected. Errors are reported as ParseError.

#include <optional>
#include <string_view>

#include "hml/errors.hpp"
#include "hml/formula.hpp"
#include "hml/language.hpp"
#include "hml/process.hpp"

namespace hml {

[[nodiscard]] Term parse_process(std::string_view text, const std::optional<ActionSet>& alphabet = std::nullopt);
[[nodiscard]] Formula parse_formula(std::string_view text, const std::optional<ActionSet>& alphabet = std::nullopt);
/// "a>b,b>c"
[[nodiscard]] PriorityOrder parse_priority(std::string_view text);
/// "a,b" or "{a,b}"; empty braces give the empty set.
[[nodiscard]] ActionSet parse_action_list(std::string_view text);

/// Language file: one formula per line, `# comment`, `@actions a,b`, and
/// `@grammar ID actions=a,b depth=D width=W [n=N]`. A grammar line makes the
/// whole file a grammar language; mixing it with explicit formulas is an error.
[[nodiscard]] LanguageSpec parse_language(std::string_view text);

} // namespace hml
