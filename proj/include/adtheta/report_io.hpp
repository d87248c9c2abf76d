#pragma once

#include <string>

#include "adtheta/convergence.hpp"

namespace adtheta {

enum class ReportFormat { csv, json };

/// CSV rendering with a fixed schema, one header line, rows sorted by
/// (scheme, N) and reals in scientific notation with 6 significant digits:
///   bsde:     scheme,q,N,h,err_y,err_z,invalid_y,invalid_z
///   integral: scheme,q,N,h,err,invalid
/// Failed cells carry no numbers and are omitted from the CSV; they are
/// listed in the JSON rendering under "failures".
std::string render_csv(const ConvergenceReport& report);

/// JSON rendering mirroring the report: rows (with round-off-floor flags),
/// fitted rates and any failed cells. Deterministic output.
std::string render_json(const ConvergenceReport& report);

/// Writes the chosen rendering to `path`. I/O failures raise
/// std::runtime_error naming the path.
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);

}  // namespace adtheta
