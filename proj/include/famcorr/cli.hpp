#pragma once

#include <string>
#include <vector>

namespace famcorr {

// Runs one CLI invocation. Returns the process exit status: 0 on success,
// 1 on data/validation errors (diagnostic on stderr names the file and
// line/offset), 2 on usage errors.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace famcorr
