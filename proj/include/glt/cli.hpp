#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glt/glgroup.hpp"

namespace glt {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

// "{s s+x4 s+2x4}", "s+x3, s+delta" or "" (empty upset); cells of the upset
// grid named by their offset from s.
CellMask parse_upset(const GLContext& ctx, const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace glt
