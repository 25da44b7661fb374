#ifndef MSUM_CLI_HPP
#define MSUM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace msum {

/// Entry point of the `msum` tool; `args` excludes the program name.
/// Exit codes: 0 = solved/pass, 1 = no solution in the requested class,
/// 2 = parse/usage error, 3 = internal invariant violation.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace msum

#endif
