#pragma once

#include <string>
#include <vector>

#include "optrack/csv.hpp"

namespace optrack {

// Static SVG 1.1 charts, written without external processes.
//
// Per instance: normalized MSE vs horizon, one line per algorithm with a
// +-2 SE band. Plus one chart of the Neyman loss curve over pi for the
// instance whose optimal allocation is farthest from 1/2, annotated at pi*
// and pi* +- eps together with the optimal variance level.
//
// Returns the file names written, relative to out_dir. Throws if rows is
// empty or the directory cannot be written.
std::vector<std::string> emit_plots(const std::vector<ResultRow>& rows,
                                    const std::string& out_dir);

}  // namespace optrack
