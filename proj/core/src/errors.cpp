#include "frax/errors.hpp"

namespace frax {

void throw_parameter(const std::string& what) { throw ParameterError(what); }

}  // namespace frax
