#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfg {

// Exit 0 when every verdict passes or is skipped, 1 on a failed verdict, 2 on usage or input errors.
// The JSON report goes to out, diagnostics to err.  args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfg
