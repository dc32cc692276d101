#ifndef TREELAB_ERRORS_HPP
#define TREELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace treelab {

// Raised when a documented resource cap is exceeded (enumeration size,
// dense-solver dimension, retry budgets); distinct from usage errors so the
// CLI can map it to its own exit code.
struct ResourceCapError : std::runtime_error {
    explicit ResourceCapError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace treelab

#endif
