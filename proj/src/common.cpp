#include "thinht/common.hpp"

#include <cstdio>

namespace thinht {

std::string to_hex(u64 v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace thinht
