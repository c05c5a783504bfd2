#pragma once

#include <iosfwd>

namespace triterp::cli {

/// Parse argv and run one subcommand, writing tables/summaries to `out` and
/// diagnostics to `err`.  Returns the process exit code: 0 on success, 2 on
/// a validation problem (bad flags, constraint violations), 1 on a numeric
/// failure during the run.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

} // namespace triterp::cli
