#pragma once

#include <string>
#include <string_view>

#include "mquant/algebra.hpp"

namespace mq {

// Parses the operator DSL:
//
//   expr    := ["-"] term (("+"|"-") term)*
//   term    := [coeff "*"?] factor+ | coeff
//   coeff   := rational | rational "i" | "(" rational ("+"|"-") rational "i" ")"
//   factor  := species ["+"] "(" index ("," index)* ")"
//            | "delta" "(" index ("," index)* ";" index ("," index)* ")"
//   species := "b" | "d" | "a" | "u"
//   rational:= ["-"] integer ["/" integer]
//   index   := identifier | integer
//
// The delta factor is the printed form of Kronecker deltas produced by
// normal ordering, so canonical forms round-trip through text.
RExpr parse_expr(std::string_view text);

// Emits exactly the grammar above; parse(print(e)) == e on canonical forms.
std::string print_expr(const RExpr& e);

}  // namespace mq
