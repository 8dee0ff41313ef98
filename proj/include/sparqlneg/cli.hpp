#pragma once
// Command-line front end. Exit codes: 0 success (or equivalent / in
// fragment), 1 inequivalent / not in fragment, 2 parse or usage errors,
// 3 rewrite rejected with a reason.

#include <iosfwd>
#include <string>
#include <vector>

namespace sparqlneg {

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace sparqlneg
