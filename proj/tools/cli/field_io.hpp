#pragma once

#include <iosfwd>
#include <string>

#include "vortexball/field.hpp"

namespace vortexball::cli {

/// GLF1 layout, little-endian: "GLF1", u64 nx, u64 ny, f64 origin[2], f64 extent[2], f64 eps,
/// nx*ny complex samples (re, im), u8 has_A, then nx*ny (Ax, Ay) pairs when has_A is 1.
void write_field(const ComplexField& field, std::ostream& out);
ComplexField read_field(std::istream& in);

void save_field(const ComplexField& field, const std::string& path);
ComplexField load_field(const std::string& path);

}  // namespace vortexball::cli
