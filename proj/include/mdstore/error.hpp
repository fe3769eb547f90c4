#ifndef MDSTORE_ERROR_HPP
#define MDSTORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mdstore {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument or out-of-range position/index.
struct DomainError : Error {
    using Error::Error;
};

// Schema declaration problems: bad cardinalities, duplicate dimension
// names, geometry too large for the one-dimensional index.
struct SchemaError : Error {
    using Error::Error;
};

// Relation content violates key uniqueness.
struct IntegrityError : Error {
    using Error::Error;
};

// A value does not fit the declared fixed width (BOC offset spans,
// narrow measures).
struct CapacityError : Error {
    using Error::Error;
};

// File-level failures: bad magic, truncation, checksum mismatch.
struct IoError : Error {
    using Error::Error;
};

// CSV / manifest parsing.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace mdstore

#endif
