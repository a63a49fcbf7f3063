#pragma once

namespace catsim {

// Full command-line entry point: `catsim <mode> --config <path> [--key value ...]`.
// Exit codes: 0 success, 2 configuration error, 3 memory budget exceeded,
// 4 I/O failure, 1 anything else.
int cli_main(int argc, const char* const* argv);

}  // namespace catsim
