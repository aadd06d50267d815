// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/cli/commands.hpp"

int main(int argc, char** argv) { return lsc::cli::run(argc, argv); }
