#pragma once

#include <string>
#include <string_view>

namespace eds {

// Interned coordinate/parameter symbol. Ordering is by name, not by
// interning order, so canonical forms do not depend on parse order.
using VarId = int;

// Validates the identifier grammar [a-zA-Z][a-zA-Z0-9_]*.
VarId var_intern(std::string_view name);

const std::string& var_name(VarId v);

bool var_less(VarId a, VarId b);

}  // namespace eds
