// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return certchain::cli::run(argc, argv, std::cout, std::cerr);
}
