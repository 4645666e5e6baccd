#include "assure/fixed_format.h"

#include <array>
#include <charconv>
#include <cstdint>

namespace assure {

std::string FormatFixed4(double value) {
  std::array<char, 64> buf;
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 4);
  std::string out(buf.data(), res.ptr);
  if (out == "-0.0000") out = "0.0000";
  return out;
}

double Round4(double value) {
  const std::string text = FormatFixed4(value);
  double v = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

std::string FormatShortest(double value) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string FormatGeneral(double value, int precision) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, precision);
  return std::string(buf.data(), res.ptr);
}

std::string Fnv1aHex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace assure
