#pragma once

namespace meshcurv {

/// Entry point of the command-line tool (estimate | bench | check).
/// Exit codes: 0 success, 1 usage or parse error, 2 check findings,
/// 3 runtime failure.
int cli_main(int argc, const char* const* argv);

}  // namespace meshcurv
