// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/cli.hpp"

int main(int argc, char** argv) { return hillcert::run_cli(argc, argv); }
