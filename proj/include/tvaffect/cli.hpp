#pragma once

#include <iosfwd>

namespace tvaffect {

// Entry point of the `tvaffect` command; returns the process exit status.
// Subcommands: lexicon-validate, score, features, synth, evaluate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tvaffect
