#pragma once

// Little-endian binary streams and the directory-artifact helpers shared by
// the index and the rule store.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

namespace msa::detail {

class BinaryWriter {
public:
  explicit BinaryWriter(const std::filesystem::path& path);

  template <typename T>
    requires std::is_arithmetic_v<T>
  void put(T value) {
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  template <typename T>
    requires std::is_arithmetic_v<T>
  void put_array(const std::vector<T>& values) {
    put<std::uint64_t>(values.size());
    out_.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(T)));
  }

  void put_string(std::string_view s);
  void close();

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class BinaryReader {
public:
  explicit BinaryReader(const std::filesystem::path& path);

  template <typename T>
    requires std::is_arithmetic_v<T>
  T get() {
    T value{};
    read_raw(&value, sizeof(T));
    return value;
  }

  template <typename T>
    requires std::is_arithmetic_v<T>
  std::vector<T> get_array() {
    const auto n = get<std::uint64_t>();
    check_remaining(n, sizeof(T));
    std::vector<T> values(n);
    read_raw(values.data(), n * sizeof(T));
    return values;
  }

  std::string get_string();
  void expect_end();

private:
  void read_raw(void* dst, std::size_t bytes);
  void check_remaining(std::uint64_t count, std::size_t elem_size);

  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t size_ = 0;
  std::uint64_t consumed_ = 0;
};

// Builds an artifact in a sibling temporary directory and renames it into
// place on commit(); an abandoned builder removes its temporary directory.
class StagedDirectory {
public:
  StagedDirectory(std::filesystem::path target, bool force);
  ~StagedDirectory();
  StagedDirectory(const StagedDirectory&) = delete;
  StagedDirectory& operator=(const StagedDirectory&) = delete;

  const std::filesystem::path& path() const { return staging_; }
  void commit();

private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest);

// Reads dir/manifest.json and verifies its "format" and "version" fields.
nlohmann::json read_manifest(const std::filesystem::path& dir, std::string_view format, int version);

}  // namespace msa::detail
