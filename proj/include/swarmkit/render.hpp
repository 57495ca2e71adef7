#pragma once

#include "swarmkit/engine.hpp"

#include <ostream>

namespace swarmkit {

/// Static SVG of a trace: one polyline per robot, final multiplicities as
/// labels, crashed robots marked with an X, verdict and final support size
/// in a caption.
void render_svg(std::ostream& out, const ExecutionTrace& trace);

} // namespace swarmkit
