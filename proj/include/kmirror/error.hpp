#pragma once

#include <stdexcept>
#include <string>

namespace kmirror {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain user input.
class input_error : public error {
public:
    using error::error;
};

// A requested computation does not fit under the configured cutoffs.
class cutoff_error : public error {
public:
    using error::error;
};

} // namespace kmirror
