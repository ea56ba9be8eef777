#pragma once

#include <stdexcept>
#include <string>

namespace logmoduli {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input. The CLI maps this family to exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& what, std::string path = {})
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Dangling ids, wrong vector lengths, duplicate ids, empty graphs.
class StructuralError : public InputError {
public:
    using InputError::InputError;
};

// Required data (a coordinate, an eta value) was not supplied.
class MissingDataError : public InputError {
public:
    using InputError::InputError;
};

// An operation was called outside its documented domain.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

// A computation was refused because the instance exceeds a documented size cap.
class CapacityError : public InputError {
public:
    using InputError::InputError;
};

// Two independent computation paths disagreed. Always a bug in this library.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal consistency failure: " + what) {}
};

}  // namespace logmoduli
