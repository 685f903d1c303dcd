#pragma once

// Field persistence: CSV with header comments
//   # T=..., nx=..., ny=..., alpha=..., beta=...
// followed by "x,y,u" rows (x outer, y inner).  All floating-point values are
// printed with 17 significant digits, so write/read round-trips bit-exactly;
// alpha/beta are the clamped boundary values of the window.

#include <string>

#include "hetstrip/strip/field.hpp"

namespace hetstrip::io {

void write_field_csv(const std::string& path, const strip::Field& f);
strip::Field read_field_csv(const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace hetstrip::io
