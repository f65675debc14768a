#include "ff/caps.hpp"

#include <cstdlib>

namespace ff {

Caps& caps() {
  static Caps instance;
  return instance;
}

void apply_caps_string(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("bad caps item (expected key=value): " + item);
    std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad caps value: " + item);
    }
    if (key == "elements")
      caps().elements = value;
    else if (key == "lattice")
      caps().lattice = value;
    else if (key == "aut")
      caps().aut = value;
    else if (key == "budget")
      caps().budget = value;
    else
      throw ParseError("unknown caps key: " + key);
  }
}

void apply_caps_env() {
  const char* env = std::getenv("FUSIONFORGE_CAPS");
  if (env != nullptr && *env != '\0') apply_caps_string(env);
}

}  // namespace ff
