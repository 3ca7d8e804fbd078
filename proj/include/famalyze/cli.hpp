#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace famalyze {

// Full command-line driver, callable in-process for tests.
// Exit codes: 0 all asserts valid (or none) / check passed; 1 some assert
// violated or unknown / check failed; 2 usage or frontend error;
// 3 enumeration cap or timeout.
int cli_main(std::vector<std::string> args, std::ostream &out, std::ostream &err);

} // namespace famalyze
