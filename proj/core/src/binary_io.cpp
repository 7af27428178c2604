#include "binary_io.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <unistd.h>

#include "msa/error.hpp"

static_assert(std::endian::native == std::endian::little, "artifact I/O assumes a little-endian host");

namespace msa::detail {

namespace fs = std::filesystem;

BinaryWriter::BinaryWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw ArtifactError("cannot create " + path.string());
}

void BinaryWriter::put_string(std::string_view s) {
  put<std::uint64_t>(s.size());
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::close() {
  out_.flush();
  if (!out_) throw ArtifactError("write failed: " + path_.string());
  out_.close();
}

BinaryReader::BinaryReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw ArtifactError("cannot open " + path.string());
  std::error_code ec;
  size_ = fs::file_size(path, ec);
  if (ec) throw ArtifactError("cannot stat " + path.string());
}

std::string BinaryReader::get_string() {
  const auto n = get<std::uint64_t>();
  check_remaining(n, 1);
  std::string s(n, '\0');
  read_raw(s.data(), n);
  return s;
}

void BinaryReader::expect_end() {
  if (consumed_ != size_) throw ArtifactError("trailing bytes in " + path_.string());
}

void BinaryReader::read_raw(void* dst, std::size_t bytes) {
  if (bytes > size_ - consumed_) throw ArtifactError("truncated artifact file: " + path_.string());
  in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
  if (!in_) throw ArtifactError("read failed: " + path_.string());
  consumed_ += bytes;
}

void BinaryReader::check_remaining(std::uint64_t count, std::size_t elem_size) {
  if (count > (size_ - consumed_) / elem_size) throw ArtifactError("truncated artifact file: " + path_.string());
}

StagedDirectory::StagedDirectory(fs::path target, bool force) : target_(std::move(target)) {
  std::error_code ec;
  if (fs::exists(target_, ec) && !force) {
    throw ArtifactError("artifact already exists: " + target_.string() + " (pass --force to overwrite)");
  }
  static std::atomic<unsigned> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  staging_ = target_;
  staging_ += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" + std::to_string(counter++);
  if (target_.has_parent_path()) fs::create_directories(target_.parent_path(), ec);
  if (!fs::create_directory(staging_, ec) || ec) {
    throw ArtifactError("cannot create staging directory " + staging_.string());
  }
}

StagedDirectory::~StagedDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDirectory::commit() {
  std::error_code ec;
  if (fs::exists(target_, ec)) {
    fs::path old = staging_;
    old += ".old";
    fs::rename(target_, old, ec);
    if (ec) throw ArtifactError("cannot move aside " + target_.string() + ": " + ec.message());
    fs::rename(staging_, target_, ec);
    if (ec) {
      std::error_code ignored;
      fs::rename(old, target_, ignored);
      throw ArtifactError("cannot install " + target_.string() + ": " + ec.message());
    }
    fs::remove_all(old, ec);
  } else {
    fs::rename(staging_, target_, ec);
    if (ec) throw ArtifactError("cannot install " + target_.string() + ": " + ec.message());
  }
  committed_ = true;
}

void write_manifest(const fs::path& dir, const nlohmann::json& manifest) {
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw ArtifactError("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
  if (!out) throw ArtifactError("cannot write manifest in " + dir.string());
}

nlohmann::json read_manifest(const fs::path& dir, std::string_view format, int version) {
  const fs::path path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw ArtifactError("missing manifest: " + path.string());
  nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object()) throw ArtifactError("unreadable manifest: " + path.string());
  if (manifest.value("format", std::string()) != format) {
    throw ArtifactError(path.string() + " is not a " + std::string(format) + " artifact");
  }
  const int found = manifest.value("version", -1);
  if (found != version) {
    throw ArtifactError(std::string(format) + " artifact " + dir.string() + " has format version " +
                        std::to_string(found) + ", this build reads version " + std::to_string(version) +
                        "; rebuild it with `msa build --force`");
  }
  return manifest;
}

}  // namespace msa::detail
