#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tnf::cli {

/// Runs the `tnf` command line. Returns 0 on success, 1 on a domain error
/// (bad parameters, size limits) and 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tnf::cli
