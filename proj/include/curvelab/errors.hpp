#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvelab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition. The CLI maps every subclass to exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Input that is well-formed but carries no length (e.g. a constant curve where a positive length is needed).
class DegenerateInputError : public InputError {
public:
    using InputError::InputError;
};

/// Declared constants contradict the data, e.g. a Lipschitz bound below the sample's own constant.
class InconsistentDataError : public InputError {
public:
    using InputError::InputError;
};

/// Two coincident points carry different values, so no finite Lipschitz constant exists.
class InfiniteConstantError : public InputError {
public:
    using InputError::InputError;
};

class ScheduleError : public InputError {
public:
    using InputError::InputError;
};

/// The forge exhausted its evaluation budget before the growth inequality could be met.
class HorizonError : public Error {
public:
    HorizonError(const std::string& what, std::size_t level_reached)
        : Error(what), level_(level_reached) {}

    std::size_t level_reached() const noexcept { return level_; }

private:
    std::size_t level_;
};

} // namespace curvelab
