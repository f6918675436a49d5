#pragma once

// On-disk sequence formats.
//
// ASCII:  one '0' or '1' per element ('1' is +1); whitespace is ignored.
// PACKED: 8-byte little-endian unsigned bit count N, then ceil(N/8) payload
//         bytes. Element i is bit (i % 8) of payload byte i / 8, least
//         significant bit first. Unused high bits of the last byte are zero.

#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "prs/error.hpp"
#include "prs/sequence.hpp"

namespace prs {

enum class SequenceFormat { Ascii, Packed };

inline SequenceFormat parse_format(std::string_view name) {
  if (name == "ascii") return SequenceFormat::Ascii;
  if (name == "packed") return SequenceFormat::Packed;
  throw Error(ErrorCode::InvalidArgument, "unknown sequence format '" + std::string(name) + "'");
}

inline const char* to_string(SequenceFormat f) { return f == SequenceFormat::Ascii ? "ascii" : "packed"; }

inline BinarySequence parse_ascii(std::string_view text) {
  SequenceBuilder out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0' || c == '1') {
      if (out.size() == kMaxSequenceLength) throw Error(ErrorCode::TooLarge, "sequence length exceeds 2^28");
      out.push(c == '1' ? 1 : -1);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError(ParseErrorKind::BadSymbol, i, std::string("'") + c + "'");
    }
  }
  if (out.size() == 0) throw ParseError(ParseErrorKind::Empty, text.size());
  return std::move(out).build();
}

inline std::string format_ascii(const BinarySequence& e) {
  std::string s(e.size(), '0');
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e.bit(i)) s[i] = '1';
  s.push_back('\n');
  return s;
}

inline BinarySequence parse_packed(std::string_view bytes) {
  if (bytes.size() < 8) throw ParseError(ParseErrorKind::BadHeader, bytes.size(), "header needs 8 bytes");
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) n = (n << 8U) | static_cast<unsigned char>(bytes[static_cast<std::size_t>(i)]);
  if (n == 0) throw ParseError(ParseErrorKind::BadHeader, 0, "bit count is zero");
  if (n > kMaxSequenceLength) throw ParseError(ParseErrorKind::BadHeader, 0, "bit count exceeds 2^28");
  const std::size_t payload = static_cast<std::size_t>((n + 7) / 8);
  if (bytes.size() < 8 + payload)
    throw ParseError(ParseErrorKind::Truncated, bytes.size(), "expected " + std::to_string(8 + payload) + " bytes");
  if (bytes.size() > 8 + payload) throw ParseError(ParseErrorKind::TrailingData, 8 + payload);
  std::vector<std::uint64_t> words((payload + 7) / 8, 0);
  for (std::size_t i = 0; i < payload; ++i)
    words[i / 8] |= std::uint64_t{static_cast<unsigned char>(bytes[8 + i])} << (8 * (i % 8));
  const unsigned tail = static_cast<unsigned>(n % 8);
  if (tail != 0 && (static_cast<unsigned char>(bytes[8 + payload - 1]) >> tail) != 0)
    throw ParseError(ParseErrorKind::BadSymbol, 8 + payload - 1, "nonzero padding bits");
  return BinarySequence::from_words(std::move(words), static_cast<std::size_t>(n));
}

inline std::string format_packed(const BinarySequence& e) {
  std::string out(8 + (e.size() + 7) / 8, '\0');
  std::uint64_t n = e.size();
  for (std::size_t i = 0; i < 8; ++i, n >>= 8U) out[i] = static_cast<char>(n & 0xFFU);
  const auto words = e.words();
  for (std::size_t i = 0; i < (e.size() + 7) / 8; ++i) out[8 + i] = static_cast<char>((words[i / 8] >> (8 * (i % 8))) & 0xFFU);
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

inline BinarySequence read_sequence(const std::filesystem::path& path, SequenceFormat format) {
  const std::string data = read_file(path);
  return format == SequenceFormat::Ascii ? parse_ascii(data) : parse_packed(data);
}

inline void write_sequence(const std::filesystem::path& path, SequenceFormat format, const BinarySequence& e) {
  write_file(path, format == SequenceFormat::Ascii ? format_ascii(e) : format_packed(e));
}

}  // namespace prs
