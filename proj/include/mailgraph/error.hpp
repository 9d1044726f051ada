#pragma once

#include <stdexcept>
#include <string>

namespace mailgraph {

// Raised for malformed or missing input data (files, records, corpus layout).
// The CLI maps this to exit code 2; usage problems map to exit code 1.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mailgraph
