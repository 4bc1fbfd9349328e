#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lindosc/app/config.hpp"

namespace lindosc::app {

/// 17 significant digits: doubles round-trip exactly.
std::string num(double x);

/// '#'-prefixed block: program, version, command and the resolved config.
void write_header(std::ostream& os, const RunConfig& cfg, const std::string& command,
                  const std::vector<std::string>& extra = {});

}  // namespace lindosc::app
