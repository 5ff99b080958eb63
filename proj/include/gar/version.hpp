#ifndef GAR_VERSION_HPP
#define GAR_VERSION_HPP

namespace gar {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // GAR_VERSION_HPP
