#include "dqm/quaternion.hpp"

#include <ostream>

namespace dqm {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

}  // namespace dqm
