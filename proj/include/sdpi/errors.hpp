#ifndef SDPI_ERRORS_HPP
#define SDPI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdpi {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeWeight final : Error { using Error::Error; };
struct NotNormalized final : Error { using Error::Error; };
struct ZeroTotalMass final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct ZeroMassEvent final : Error { using Error::Error; };
struct ParameterOutOfRange final : Error { using Error::Error; };
struct InvalidOrder final : Error { using Error::Error; };
struct AlphabetTooLarge final : Error { using Error::Error; };
struct DegenerateMeasure final : Error { using Error::Error; };
struct InvalidRadius final : Error { using Error::Error; };
struct UnsupportedKind final : Error { using Error::Error; };
struct NotFullSupport final : Error { using Error::Error; };
struct NotErgodic final : Error { using Error::Error; };
struct NoConvergence final : Error { using Error::Error; };
struct RateOutOfRange final : Error { using Error::Error; };
struct AbsoluteContinuityViolation final : Error { using Error::Error; };
struct ParseError final : Error { using Error::Error; };

}  // namespace sdpi

#endif  // SDPI_ERRORS_HPP
