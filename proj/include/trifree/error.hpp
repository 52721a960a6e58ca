#ifndef TRIFREE_ERROR_HPP
#define TRIFREE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace trifree {

/// Malformed input: bad indices, unknown names, duplicate elements.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured size cap.
class capacity_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace trifree

#endif
