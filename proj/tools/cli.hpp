#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combmod::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 ok, 2 input error, 3 invariant or verification failure,
/// 4 resource cap. Reports go to `out` unless --out is given; diagnostics
/// go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace combmod::cli
