#pragma once

namespace cssbp {

/// Full command-line entry point (subcommands: validate, decode, trials,
/// equiv, oracle).  Returns the process exit code: 0 on success, 1 on
/// data/runtime errors, 2 on usage errors.
int cli_main(int argc, char** argv);

}  // namespace cssbp
