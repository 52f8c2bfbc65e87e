#pragma once

#include <string>

#include "procm/syntax.hpp"

namespace procm {

std::string to_source(const StrExpr& e);
std::string to_source(const BoolExpr& b);
std::string to_source(const Process& p);
std::string to_source(const ChannelRef& ch);

/// Full program text in the concrete grammar accepted by parse_program.
std::string to_source(const Program& prog);

}  // namespace procm
