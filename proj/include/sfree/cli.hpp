#ifndef SFREE_CLI_HPP
#define SFREE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sfree {

// Entry point of the `sfree` tool; `args` excludes the program name.
// Exit codes: 0 star-free / equivalent / success, 1 not star-free /
// not equivalent / disagreement, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sfree

#endif
