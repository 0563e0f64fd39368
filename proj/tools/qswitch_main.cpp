// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/cli.hpp"

int main(int argc, char** argv) { return qswitch::run(argc, argv); }
