#pragma once

#include <stdexcept>
#include <string>

namespace lincount {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error { using Error::Error; };
struct DegreeZeroError : Error { using Error::Error; };
struct DivisionByZeroError : Error { using Error::Error; };
struct ContextMismatchError : Error { using Error::Error; };
struct ZeroPolynomialError : Error { using Error::Error; };
struct NotSquarefreeError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct NotHomogeneousError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct LineOnCurveError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct DegreeMismatchError : Error { using Error::Error; };
struct ContainsComponentError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

} // namespace lincount
