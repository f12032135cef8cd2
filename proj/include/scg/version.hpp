#ifndef SCG_VERSION_HPP
#define SCG_VERSION_HPP

namespace scg {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // SCG_VERSION_HPP
