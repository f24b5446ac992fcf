#ifndef HRCS_ERRORS_HPP
#define HRCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hrcs {

// Every failure mode in the library throws a subclass of Error carrying a
// stable code string; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define HRCS_DEFINE_ERROR(NAME)                                                \
    class NAME : public Error {                                                \
      public:                                                                  \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}         \
    }

// finite-field
HRCS_DEFINE_ERROR(NotPrime);
HRCS_DEFINE_ERROR(UnsupportedOrder);
HRCS_DEFINE_ERROR(NoIrreducibleFound);
HRCS_DEFINE_ERROR(DivideByZero);
HRCS_DEFINE_ERROR(FieldMismatch);
HRCS_DEFINE_ERROR(DuplicateNode);
HRCS_DEFINE_ERROR(WrongPointCount);

// hash-family
HRCS_DEFINE_ERROR(ContainsMissingSymbol);
HRCS_DEFINE_ERROR(SparsityExceedsColumns);
HRCS_DEFINE_ERROR(DimensionMismatch);
HRCS_DEFINE_ERROR(AlphaOutOfRange);
HRCS_DEFINE_ERROR(TooManyRows);
HRCS_DEFINE_ERROR(RowOutOfRange);

// linalg
HRCS_DEFINE_ERROR(RankDeficient);
HRCS_DEFINE_ERROR(SizeExceeded);

// ingredient
HRCS_DEFINE_ERROR(SparsityTooLarge);
HRCS_DEFINE_ERROR(Infeasible);
HRCS_DEFINE_ERROR(DuplicateNodes);

// compose
HRCS_DEFINE_ERROR(AlphabetMismatch);
HRCS_DEFINE_ERROR(RowCountMismatch);

// recover
HRCS_DEFINE_ERROR(SupportTooLarge);
HRCS_DEFINE_ERROR(ResidualTooLarge);
HRCS_DEFINE_ERROR(NoMaximumRow);
HRCS_DEFINE_ERROR(NotLinearPattern);
HRCS_DEFINE_ERROR(InsufficientRows);
HRCS_DEFINE_ERROR(MissingSymbolPresent);

// I/O
HRCS_DEFINE_ERROR(ParseError);

#undef HRCS_DEFINE_ERROR

}  // namespace hrcs

#endif
