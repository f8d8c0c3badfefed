#pragma once

#include <iosfwd>
#include <string>

#include "mrc/analysis.hpp"
#include "mrc/eigenmodes.hpp"
#include "mrc/sweep.hpp"

namespace mrc {

// log10|Z0| against frequency as SVG. Eigen-frequencies are drawn as black
// dotted verticals, detected peaks as red solid verticals.
void write_spectrum_svg(std::ostream& out, const SweepResult& result, const PeakList* peaks,
                        const ModeSet* modes, const std::string& title);

// Relative peak/eigen deviation per mode against R, log-log.
void write_damping_svg(std::ostream& out, const DampingStudy& study, const std::string& title);

}  // namespace mrc
