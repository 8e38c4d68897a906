#pragma once

#include <stdexcept>
#include <string>

namespace qplex {

// Input data could not be parsed (graph file, model file).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented size limit was exceeded (exhaustive search width,
// statevector width, vertex count).
struct limit_error : std::runtime_error {
    explicit limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Out-of-range parameters (k < 1, R <= 1, ...) raise std::invalid_argument.

}
