#pragma once

#include <iosfwd>
#include <string>

#include "plsat/formula.hpp"

namespace plsat {

// Standard DIMACS CNF. Provenance (if present) goes out as "c plsat ..."
// comment lines and is recovered by read_dimacs.
void write_dimacs(const Formula& f, std::ostream& out);

// strict_k > 0 rejects any clause whose width differs from strict_k.
// Rejects: missing/garbled header, variable index > n, duplicate variable
// within a clause.
Formula read_dimacs(std::istream& in, std::size_t strict_k = 0);

void write_dimacs_file(const Formula& f, const std::string& path);
Formula read_dimacs_file(const std::string& path, std::size_t strict_k = 0);

}  // namespace plsat
