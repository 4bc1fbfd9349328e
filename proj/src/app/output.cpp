#include "lindosc/app/output.hpp"

#include <sstream>

namespace lindosc::app {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void write_header(std::ostream& os, const RunConfig& cfg, const std::string& command,
                  const std::vector<std::string>& extra) {
  os << "# lindosc " << LINDOSC_VERSION << "\n";
  os << "# command = " << command << "\n";
  for (const auto& line : describe_config(cfg)) os << "# " << line << "\n";
  for (const auto& line : extra) os << "# " << line << "\n";
}

}  // namespace lindosc::app
