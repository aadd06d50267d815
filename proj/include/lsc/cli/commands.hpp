// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

namespace lsc::cli {

// Parses argv and runs one subcommand (synth, train, eval, score,
// export-png). Returns the process exit code: 0 success, 1 usage error,
// 2 data/format error, 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace lsc::cli
