#ifndef QECHO_ERRORS_HPP
#define QECHO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qecho {

// Invalid problem definition (bad chain length, malformed grids, ...).
class invalid_spec_error : public std::invalid_argument {
public:
    explicit invalid_spec_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// A quantized momentum hit an exact gap zero; the per-mode echo factor is
// ill-defined there and we refuse to regularize.
class degenerate_mode_error : public std::runtime_error {
public:
    degenerate_mode_error(double k, const std::string& what)
        : std::runtime_error(what), momentum(k) {}
    double momentum;
};

// A quadrature or inversion failed to reach its requested accuracy.
class numeric_accuracy_error : public std::runtime_error {
public:
    explicit numeric_accuracy_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Requested density grid does not capture the distribution's mass.
class grid_too_narrow_error : public std::runtime_error {
public:
    explicit grid_too_narrow_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Near-degenerate spectrum in the generic-model branch.
class degeneracy_error : public std::runtime_error {
public:
    degeneracy_error(int level_a, int level_b, const std::string& what)
        : std::runtime_error(what), a(level_a), b(level_b) {}
    int a;
    int b;
};

} // namespace qecho

#endif
