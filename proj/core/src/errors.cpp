#include "qfa/errors.hpp"

namespace qfa {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(what), line_(line), column_(column) {}

NumericalError::NumericalError(const std::string& what, std::ptrdiff_t index)
    : Error(what), index_(index) {}

}  // namespace qfa
