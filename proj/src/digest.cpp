#include "ren/digest.hpp"

#include <cstdio>

namespace ren {

std::string Digest128::hex() const {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
}

}  // namespace ren
