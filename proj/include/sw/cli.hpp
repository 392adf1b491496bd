#pragma once

namespace sw {

// full command-line entry point; returns the process exit code
// (0 success, 2 configuration error, 3 data error)
int run_cli(int argc, const char* const* argv);

} // namespace sw
