#ifndef HOTOPO_IO_UTIL_HPP
#define HOTOPO_IO_UTIL_HPP

#include <string>

namespace hotopo {

// %.17g formatting; enough digits to round-trip any double exactly.
std::string format_double(double v);

// Write content to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace hotopo

#endif
