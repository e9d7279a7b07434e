#include "bergman/errors.hpp"

#include <utility>

namespace bergman {

Error::Error(std::string kind, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind)) {}

}  // namespace bergman
