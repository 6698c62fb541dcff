#pragma once

#include <string>

#include "cubecorr/function_table.hpp"

namespace cubecorr {

// Table file format: {"n": int, "kind": "indicator01"|"pm1"|"bounded",
// "table": [2^n numbers]} or {"n": int, "family": [member masks]};
// bit (i-1) of a mask holds coordinate x_i.
FunctionTable table_from_json(const std::string& text);
std::string table_to_json(const FunctionTable& f, int indent = -1);

} // namespace cubecorr
