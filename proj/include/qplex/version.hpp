#pragma once

namespace qplex {

inline constexpr const char* qplex_version = "0.1.0";

}
