#pragma once
#include <stdexcept>
#include <string>

namespace hl {

// numeric procedure failed to reach its tolerance
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hl
