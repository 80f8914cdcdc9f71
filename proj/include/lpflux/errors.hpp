#ifndef LPFLUX_ERRORS_HPP
#define LPFLUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpflux {

enum class errc {
    invalid_grid,
    unsupported_dimension,
    dimension,
    representation,
    grid_mismatch,
    arity,
    index,
    parameter,
    resolution,
    size,
    flagged_input,
    construction,
    envelope_degeneracy,
    format,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace lpflux

#endif
