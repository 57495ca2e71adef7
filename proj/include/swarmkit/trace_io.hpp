#pragma once

// Line-oriented trace format, exact rationals throughout:
//
//   swarmkit-trace 1
//   n 4
//   pattern [0/1,0/1] [1/1,0/1] ...            (only for pattern runs)
//   robot 1 tf=2gat frame=1/1,0/1,1/1 crash=-
//   step 0 act=1,2 crashed=- lambda=1,2,-3 pos=[0/1,0/1] [1/1,0/1] ...
//   verdict reached t=5 stable=1

#include "swarmkit/engine.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace swarmkit {

void write_trace(std::ostream& out, const ExecutionTrace& trace);
ExecutionTrace read_trace(std::istream& in);

/// "[x,y]" with any accepted number syntax.
Point parse_point(std::string_view text);
/// Whitespace separated points, e.g. "[0,0] [1,0] [1/2,3]".
std::vector<Point> parse_point_list(std::string_view text);

std::string verdict_name(VerdictKind k);

} // namespace swarmkit
