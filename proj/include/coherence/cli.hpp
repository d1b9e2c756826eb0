#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coherence {

// Runs one CLI invocation. Returns 0 on success, 1 on domain errors (a JSON
// error object is written to err), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coherence
