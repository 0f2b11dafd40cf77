#pragma once

namespace imtk {

/// Entry point of the `imtk` command-line tool.
///
/// Subcommands: plan, encode, synth, decode, train, simulate. Every command
/// takes --seed (defaulted); no wall-clock entropy anywhere, so identical
/// invocations produce byte-identical outputs.
///
/// Exit codes: 0 success, 2 configuration error (bad flags, unknown
/// override key, capacity violation), 3 unreachable fabrication target,
/// 4 malformed data file.
int run_cli(int argc, const char* const* argv);

} // namespace imtk
