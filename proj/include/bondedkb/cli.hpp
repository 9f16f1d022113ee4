#pragma once

#include "bondedkb/laurent.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bkb::cli {

enum ExitCode { Ok = 0, Usage = 1, Parse = 2, Validation = 3, Internal = 4, Genericity = 5 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ASCII forms used by `eval --format text`, e.g. "(A^4/(1+A^4)^2) T^3".
std::string format_text(const SkeinValue& v);
std::string format_text(const BivariateLaurent& p);

}  // namespace bkb::cli
