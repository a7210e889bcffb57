#pragma once

#include <string>
#include <string_view>

#include "matclass/assignment.hpp"
#include "matclass/interlacing.hpp"
#include "matclass/matrix.hpp"

namespace matclass {

enum class MatrixFormat { auto_detect, json, text };

// Matrix files: JSON {"n": int, "rows": [[...], ...]} or whitespace text
// (first token n, then n^2 values row-major). auto_detect sniffs a leading
// '{'. Parse failures raise InputError with position context.
Matrix parse_matrix(std::string_view content, MatrixFormat format = MatrixFormat::auto_detect,
                    const std::string& origin = "<input>");
Matrix load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::auto_detect);

std::string to_json(const Matrix& a);
std::string to_text(const Matrix& a);

// Polynomial files: JSON {"coeffs": [highest..lowest]}.
RealPolynomial parse_polynomial(std::string_view content, const std::string& origin = "<input>");
RealPolynomial load_polynomial(const std::string& path);

// Target tables use the MinorTable JSON layout; the "0" key is optional and
// forced to 1, "c" is ignored.
TargetMinorTable parse_target_minors(std::string_view content,
                                     const std::string& origin = "<input>");
TargetMinorTable load_target_minors(const std::string& path);

MinorTable load_minor_table(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace matclass
