#include "support/gzip.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "support/error.hpp"

namespace coact {

namespace {

std::string inflate_gzip(const std::string& raw) {
  z_stream zs{};
  // 16 + MAX_WBITS selects gzip decoding.
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
    throw Error(ErrorCode::Io, "inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
  zs.avail_in = static_cast<uInt>(raw.size());
  std::string out;
  std::vector<char> buf(1 << 16);
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error(ErrorCode::Io, "gzip inflate failed");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
  } while (rc != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  return out;
}

}  // namespace

std::string read_file_maybe_gzip(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string raw = buf.str();
  bool gz = raw.size() >= 2 && static_cast<unsigned char>(raw[0]) == 0x1f &&
            static_cast<unsigned char>(raw[1]) == 0x8b;
  if (gz) return inflate_gzip(raw);
  return raw;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write file: " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "short write: " + path);
}

}  // namespace coact
