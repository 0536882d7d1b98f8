#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zpreal/error.hpp"
#include "zpreal/linalg.hpp"

namespace zpreal::cli {

// Exit codes. 0..6 are the stable contract; 7 and 8 split out the contour
// errors of `factorize`.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kParse = 3;
inline constexpr int kValidation = 4;
inline constexpr int kNoFactorization = 5;
inline constexpr int kVerificationFailed = 6;
inline constexpr int kOnContour = 7;
inline constexpr int kCardinalityMismatch = 8;

int exit_code(ErrorKind kind);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 15 significant digits, "re + imi" / "re - imi", negative zero printed as 0.
std::string format_complex(Complex z);
std::string format_matrix(const Matrix& m);

/// "1", "-2.5", "1+2i", "3-0.5i", "2i"; comma-separated lists.
Complex parse_complex(const std::string& text);
std::vector<Complex> parse_complex_list(const std::string& text);

}  // namespace zpreal::cli
