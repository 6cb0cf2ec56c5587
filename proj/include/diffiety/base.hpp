#pragma once
/* Shared scalar type and error hierarchy. */

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffiety {

/* Exact rational scalars; all engine arithmetic is over Q. */
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Malformed textual input; `pos` is a 0-based byte offset into the source. */
struct parse_error : error {
    std::size_t pos;
    parse_error(const std::string& msg, std::size_t at) : error(msg), pos(at) {}
};

/* Division by an expression that is identically zero. */
struct zero_division_error : error {
    using error::error;
};

/* Operands whose spaces/shapes/slot counts do not match. */
struct shape_error : error {
    using error::error;
};

/* Internal-coordinate rewriting exceeded the configured jet-order cap. */
struct prolongation_limit_error : error {
    using error::error;
};

/* An ansatz enumeration would exceed the configured size cap. */
struct ansatz_overflow_error : error {
    using error::error;
};

}  // namespace diffiety
