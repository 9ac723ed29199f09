// cli.hpp - command-line surface: run, empty, translate, boolean, equiv,
// encode-petri, certify, print.
#pragma once

#include <iosfwd>

namespace datamata {

/// Exit codes: 0 accept/nonempty/equivalent, 1 reject/empty/inequivalent,
/// 2 unknown (bounded semi-decisions), 10 usage, 11 parse or io error,
/// 12 incompatible verb/model.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace datamata
