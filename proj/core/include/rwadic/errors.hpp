#pragma once

#include <stdexcept>
#include <string>

namespace rwadic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// transition-matrix validation
struct EmptyRowOrColumnError : Error { using Error::Error; };
struct NotIrreducibleError : Error { using Error::Error; };
struct NotPrimitiveError : Error { using Error::Error; };

// points and orbits
struct MaximalPointError : Error { using Error::Error; };
struct MinimalPointError : Error { using Error::Error; };
struct NotTailEquivalentError : Error { using Error::Error; };
struct InadmissibleWordError : Error { using Error::Error; };
struct DepthTooLargeError : Error { using Error::Error; };
struct OutOfSupportError : Error { using Error::Error; };

// numeric budgets
struct NoConvergenceError : Error { using Error::Error; };
struct IntegerOverflowError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct PeriodBudgetExceededError : Error { using Error::Error; };
struct ReturnBudgetExceededError : Error { using Error::Error; };

// spectral
struct EigenvalueCollisionError : Error { using Error::Error; };
struct DegenerateGammaError : Error { using Error::Error; };
struct RadiusExceededError : Error { using Error::Error; };

// cocycles and groups
struct GroupMismatchError : Error { using Error::Error; };
struct NotAlmostOntoError : Error { using Error::Error; };
struct AperiodicityDiagnosticError : Error { using Error::Error; };

// configuration / cli
struct ConfigError : Error { using Error::Error; };
struct UnknownSuiteError : Error { using Error::Error; };

}  // namespace rwadic
