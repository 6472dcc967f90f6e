#include "pstirling/errors.hpp"

namespace pstirling {

PrimeMismatch::PrimeMismatch(unsigned long lhs, unsigned long rhs)
    : Error("prime mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}

} // namespace pstirling
