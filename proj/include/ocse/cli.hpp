#pragma once

namespace ocse {

/// Entry point behind the command-line tool. Subcommands: generate,
/// simulate, infer, compare, sweep, oracle. Returns 0 on success, 1 on
/// usage errors, 2 on runtime or degeneracy errors.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace ocse
