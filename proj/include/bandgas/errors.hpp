#pragma once

#include <stdexcept>
#include <string>

namespace bandgas {

// bad parameters or arguments outside a documented domain
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// an algorithm failed to reach its tolerance
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bandgas
