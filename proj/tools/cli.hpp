// Command-line front end.
//
//   validate --spec FILE
//   fidelity --machine NAME|FILE [--points N] [--phi RAD]
//   optimize --mode equal-fidelity|average [--grid-step H]
//   scan --grid-steps N
//   b92 curve --machines LIST --overlap-min X --overlap-max Y --points N
//   b92 analyze --machine NAME|FILE --vartheta RAD
//   b92 simulate --machine NAME|FILE|none --vartheta RAD --n N --seed S
//   export --machine NAME|FILE
//   synthesize --zeta Z --eta E --kappa K [--name NAME]
//
// Global flags: --out PATH, --format auto|csv|text, --degrees.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qclone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Results go to `out` unless --out is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qclone::cli
