// errors.hpp — Exception hierarchy shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace dqw {

// Bad argument values: non-finite inputs, out-of-range k, empty grids, ...
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke a precondition that ties two arguments together
// (truncation built for other parameters, window too narrow, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Eigensolver non-convergence, eigenvalues below the clamp, ...
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bisection bracket without a sign change.
class BracketError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dqw
