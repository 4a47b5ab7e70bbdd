#ifndef EVIDENT_IO_HPP
#define EVIDENT_IO_HPP

#include <filesystem>
#include <string>

namespace evident {

/// Writes content to path atomically: a temp file in the same directory is
/// written, flushed and renamed over the target. Parent directories are
/// created as needed.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evident

#endif  // EVIDENT_IO_HPP
