#ifndef POINCAREKIT_CLI_HPP
#define POINCAREKIT_CLI_HPP

#include <string>
#include <vector>

namespace poincarekit {
namespace cli {

// Exit codes: 0 success, 2 invariant/bound violation (bug detector),
// 3 input error, 4 resource budget exceeded.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

} // namespace cli
} // namespace poincarekit

#endif
