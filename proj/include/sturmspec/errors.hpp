#pragma once

#include <stdexcept>
#include <string>

namespace sturmspec {

struct MalformedDigits : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateExpansion : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroCoupling : std::domain_error {
    using std::domain_error::domain_error;
};

struct TraceOverflow : std::range_error {
    using std::range_error::range_error;
};

struct SizeCap : std::length_error {
    using std::length_error::length_error;
};

struct NotAnEdge : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotAdmissible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DepthExceeded : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct InsufficientDepth : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct MissingNeighbor : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace sturmspec
