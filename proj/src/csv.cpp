// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/csv.hpp"

#include <fstream>
#include <ostream>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

std::string format_double(double value)
{
  // Avoid "-0" so that sign-of-zero noise never changes bytes.
  if (value == 0.0)
  {
    value = 0.0;
  }
  return fmt::format("{}", value);
}

CsvWriter::CsvWriter(std::ostream &os, std::span<const std::string> header)
  : os_(os), columns_(header.size())
{
  for (std::size_t i = 0; i < header.size(); i++)
  {
    os_ << (i ? "," : "") << header[i];
  }
  os_ << '\n';
}

CsvWriter::CsvWriter(std::ostream &os, std::initializer_list<std::string> header)
  : CsvWriter(os, std::span<const std::string>(header.begin(), header.size()))
{
}

void CsvWriter::row(std::span<const double> values)
{
  if (values.size() != columns_)
  {
    throw DomainError(fmt::format("CSV row has {} values, header has {}", values.size(), columns_));
  }
  std::string line;
  for (std::size_t i = 0; i < values.size(); i++)
  {
    if (i)
    {
      line += ',';
    }
    line += format_double(values[i]);
  }
  line += '\n';
  os_ << line;
}

void CsvWriter::row(std::initializer_list<double> values)
{
  row(std::span<const double>(values.begin(), values.size()));
}

void write_matrix_csv(std::ostream &os, const Eigen::MatrixXd &A, const std::string &comment)
{
  os << comment << '\n';
  std::string line;
  for (Eigen::Index i = 0; i < A.rows(); i++)
  {
    line.clear();
    for (Eigen::Index j = 0; j < A.cols(); j++)
    {
      if (j)
      {
        line += ',';
      }
      line += format_double(A(i, j));
    }
    line += '\n';
    os << line;
  }
}

void write_matrix_csv(const std::filesystem::path &path, const Eigen::MatrixXd &A,
                      const std::string &comment)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Error(fmt::format("cannot open {} for writing", path.string()));
  }
  write_matrix_csv(out, A, comment);
}

}  // namespace sgph
