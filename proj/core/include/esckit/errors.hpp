#ifndef ESCKIT_ERRORS_HPP
#define ESCKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace esckit {

// Input/contract violations (bad files, missing annotations, bad arguments).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace esckit

#endif
