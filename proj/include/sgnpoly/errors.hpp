#ifndef SGNPOLY_ERRORS_HPP_
#define SGNPOLY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sgnpoly {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SGNPOLY_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

SGNPOLY_DEFINE_ERROR(OverflowProbability);  // some Omega_ij >= 1
SGNPOLY_DEFINE_ERROR(InvalidProbability);   // entry outside [0,1)
SGNPOLY_DEFINE_ERROR(ParseError);           // malformed edge-list input
SGNPOLY_DEFINE_ERROR(DegenerateGraph);      // V = 0, statistics undefined
SGNPOLY_DEFINE_ERROR(UnsupportedOrder);     // matrix form only for m in {3,4}
SGNPOLY_DEFINE_ERROR(TooLarge);             // brute-force guard exceeded
SGNPOLY_DEFINE_ERROR(NonpositiveNuisance);  // ||eta_hat||^2 <= 1
SGNPOLY_DEFINE_ERROR(DomainError);          // argument outside domain
SGNPOLY_DEFINE_ERROR(ZeroMatrix);           // Omega identically zero
SGNPOLY_DEFINE_ERROR(EigenFailure);         // eigensolver did not converge
SGNPOLY_DEFINE_ERROR(NullModel);            // operation needs K >= 2
SGNPOLY_DEFINE_ERROR(NonConvergence);       // fixed point hit iteration cap
SGNPOLY_DEFINE_ERROR(InvalidInput);         // malformed scaling input
SGNPOLY_DEFINE_ERROR(ConditionViolated);    // construction precondition fails
SGNPOLY_DEFINE_ERROR(Infeasible);           // no nonnegative P found
SGNPOLY_DEFINE_ERROR(NumericalOverflow);    // log-product out of range
SGNPOLY_DEFINE_ERROR(UnknownPreset);        // harness preset name not known

#undef SGNPOLY_DEFINE_ERROR

}  // namespace sgnpoly

#endif  // SGNPOLY_ERRORS_HPP_
