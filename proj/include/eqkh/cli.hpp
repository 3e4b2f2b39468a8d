#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqkh {

// Command-line front end; args excludes the program name. Exit codes:
// 0 success, 1 bad input, 2 resource cap, 3 failed verification (verify
// only), 4 even group order without the override.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqkh
