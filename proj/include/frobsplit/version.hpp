#ifndef FROBSPLIT_VERSION_HPP
#define FROBSPLIT_VERSION_HPP

namespace frobsplit {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // FROBSPLIT_VERSION_HPP
