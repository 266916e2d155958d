#include "rmt/quaternion.hpp"

#include <ostream>

namespace rmt {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.a << (q.b < 0 ? " - " : " + ") << std::abs(q.b) << "i"
              << (q.c < 0 ? " - " : " + ") << std::abs(q.c) << "j"
              << (q.d < 0 ? " - " : " + ") << std::abs(q.d) << "k)";
}

}  // namespace rmt
