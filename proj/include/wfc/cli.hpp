#pragma once

namespace wfc {

/// Command-line front end.  argv[1] selects the command (params, sif, sweep,
/// perturb, field, mode3); the run is described by a JSON config file plus a
/// handful of override flags (--config, --out, --tol, --grid, --eta).
///
/// Returns the process exit status: 0 on success, 2 on configuration or
/// usage errors, 3 on numerical failures.  Errors print a single line
/// "E_CONFIG <message>" / "E_NUMERIC <message>" to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace wfc
