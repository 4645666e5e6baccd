#pragma once

#include <string>

namespace assure {

// Four decimal places, correctly rounded from the binary value with ties to
// even, locale independent. Negative zero prints as "0.0000".
std::string FormatFixed4(double value);

// The double nearest to FormatFixed4(value); used for JSON numbers so they
// agree with the CSV text.
double Round4(double value);

// Shortest round-trip representation, locale independent.
std::string FormatShortest(double value);

// At most `precision` significant digits, locale independent.
std::string FormatGeneral(double value, int precision);

// 64-bit FNV-1a, hex encoded (16 lowercase digits).
std::string Fnv1aHex(const std::string& text);

}  // namespace assure
