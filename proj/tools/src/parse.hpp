#pragma once

#include <map>
#include <string>
#include <vector>

#include "conifold/numeric.hpp"

namespace conifold::cli {

// Complex expressions such as "0.3+0.4i", "2π/64", "-1e-3i", "(1+i)/2".
// Literals are read as exact decimals and the arithmetic is exact (pi is a
// 40-digit rational), so the only rounding is the final conversion.
cplx parse_complex(const std::string& text);
cquad parse_complex_quad(const std::string& text);
double parse_real(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);

// "A=0.3,B=0.2,k=2π/64"
std::map<std::string, cplx> parse_assignments(const std::string& text);

}  // namespace conifold::cli
