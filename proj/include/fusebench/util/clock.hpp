#pragma once

#include <string>

namespace fusebench {

// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace fusebench
