#ifndef DEFORM_ERRORS_HPP
#define DEFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace deform {

/// Input file or wire-format violation (bad JSON, broken Hermitian encoding, ...).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical hypothesis of the construction is violated
/// (state not faithful, direction not centered, probabilities invalid, ...).
struct hypothesis_error : std::invalid_argument {
  explicit hypothesis_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative solver ran out of iterations.
struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// A counterexample search exhausted its budget.
struct search_exhausted : std::runtime_error {
  explicit search_exhausted(const std::string& what) : std::runtime_error(what) {}
};

} // namespace deform

#endif // DEFORM_ERRORS_HPP
