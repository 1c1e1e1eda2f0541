#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlift/datum.hpp"

namespace mtlift {

struct DatumParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed datum file: a versioned list of Q-simple factors.  Parsing is
// strict: unknown fields, duplicate labels, out-of-range nodes and non-
// bijective mappings are rejected with a field diagnostic.  Semantic
// invariants (diagram automorphisms, orbit conditions, ...) are left to
// validate().
struct DatumFile {
  int version = 1;
  std::vector<MTFactorDatum> factors;
};

DatumFile parse_datum(std::istream& in, const std::string& source_name);
DatumFile parse_datum_file(const std::string& path);

}  // namespace mtlift
