#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qd/bigreal.hpp"
#include "qd/oracle.hpp"
#include "qd/series.hpp"
#include "qd/table.hpp"

namespace qd::io {

enum class FloatFormat { shortest, hex };

// Shortest decimal that parses back to the same bits, or a C99 hex-float.
std::string format_double(double v, FloatFormat f = FloatFormat::shortest);

// Table serialization: {algorithm, degree, q, e, eps_q, eps_e, q_lo, e_lo,
// mask}, field order fixed. Masked cells serialize as null.
std::string table_to_json(const QdTable& t, FloatFormat f = FloatFormat::shortest);
std::string table_to_json(const oracle::ExactQdTable& t);
QdTable table_from_json(const std::string& text);

struct ParseError {
  int line = 0;
  std::string message;
};

// Coefficient files: UTF-8, one coefficient per line, '#' comments.
// Accepted syntaxes: decimal, p/q exact rational, hex-float.
std::vector<BigReal> read_coefficients(const std::string& path);
void write_coefficients(const std::string& path, const std::vector<BigReal>& coeffs);

std::string csv_escape(const std::string& s);

}  // namespace qd::io
