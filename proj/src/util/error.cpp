#include "fusebench/util/error.hpp"

#include <json.hpp>

namespace fusebench {

std::string structured_error_line(const std::string& code,
                                  const std::string& message) {
  nlohmann::json j{{"code", code}, {"message", message}};
  return j.dump();
}

}  // namespace fusebench
