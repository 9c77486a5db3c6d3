// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_CSV_HPP
#define SGPH_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>
#include <Eigen/Core>

namespace sgph
{

// Comma-separated output with a header row, '.' decimal point and LF line
// endings. Doubles are written in shortest round-trip form, so identical
// values always produce identical bytes.
class CsvWriter
{
public:
  CsvWriter(std::ostream &os, std::span<const std::string> header);
  CsvWriter(std::ostream &os, std::initializer_list<std::string> header);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values);

private:
  std::ostream &os_;
  std::size_t columns_;
};

std::string format_double(double value);

// Dense row-major matrix dump preceded by a single comment line, e.g.
// "# ns=24 n=4 s=6".
void write_matrix_csv(std::ostream &os, const Eigen::MatrixXd &A, const std::string &comment);
void write_matrix_csv(const std::filesystem::path &path, const Eigen::MatrixXd &A,
                      const std::string &comment);

}  // namespace sgph

#endif  // SGPH_CSV_HPP
