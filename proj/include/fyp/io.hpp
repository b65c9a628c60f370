#ifndef FYP_IO_HPP_
#define FYP_IO_HPP_

// CSV emission and parsing for the command-line front end. All numeric
// output goes through one %.17g formatter so every file round-trips to the
// exact double and repeated runs are byte-identical. Files use UTF-8 with
// plain \n line endings and no quoting (no field ever contains a comma).

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fyp/distributions.hpp"
#include "fyp/errors.hpp"
#include "fyp/estimation.hpp"
#include "fyp/sampling.hpp"
#include "fyp/study.hpp"

namespace fyp {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Path file schema: one row per birth; population counts the initial
// individual plus the births so far.
inline void write_path_csv(std::ostream &os, const SamplePath &path) {
  os << "index,birth_time,population\n";
  for (std::size_t i = 0; i < path.birth_times.size(); ++i) {
    os << (i + 1) << ',' << format_double(path.birth_times[i]) << ','
       << (i + 2) << '\n';
  }
}

// Pmf file schema: `k,p_k` rows followed by three footer rows keyed by
// name in the first column.
inline void write_pmf_csv(std::ostream &os, const StatePmf &pmf, double mean,
                          double variance) {
  os << "k,p_k\n";
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    os << (k + 1) << ',' << format_double(pmf.probs[k]) << '\n';
  }
  os << "tail_mass," << format_double(pmf.tail_mass) << '\n';
  os << "mean," << format_double(mean) << '\n';
  os << "variance," << format_double(variance) << '\n';
}

inline void write_study_csv(std::ostream &os, const StudyReport &report) {
  os << "nu_true,lambda_true,n,replicate,nu_hat,lambda_hat,converged,"
        "wall_time\n";
  for (const StudyRow &row : report.rows) {
    os << format_double(row.nu_true) << ',' << format_double(row.lambda_true)
       << ',' << row.n << ',' << row.replicate << ','
       << format_double(row.nu_hat) << ',' << format_double(row.lambda_hat)
       << ',' << (row.converged ? "true" : "false") << ','
       << format_double(row.wall_time) << '\n';
  }
}

namespace detail {

inline void strip_cr(std::string &line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline double parse_field(const std::string &s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected a number, got '" + s + "'");
  }
}

}  // namespace detail

// Reads sojourn durations from either supported schema:
//  * a one-column `duration` file, taken verbatim;
//  * a simulate output (`index,birth_time,population`), differenced on
//    birth_time with the process origin at time zero.
inline SojournData read_durations_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw ParseError("empty input: expected a CSV header");
  }
  const auto header = detail::split_csv_line(line);
  SojournData data;
  int line_no = 1;
  if (header.size() == 1 && header[0] == "duration") {
    while (std::getline(is, line)) {
      ++line_no;
      detail::strip_cr(line);
      if (line.empty()) continue;
      const auto fields = detail::split_csv_line(line);
      if (fields.size() != 1) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected one column");
      }
      data.durations.push_back(detail::parse_field(fields[0], line_no));
    }
    return data;
  }
  if (header.size() == 3 && header[0] == "index" &&
      header[1] == "birth_time" && header[2] == "population") {
    double prev = 0.0;
    while (std::getline(is, line)) {
      ++line_no;
      detail::strip_cr(line);
      if (line.empty()) continue;
      const auto fields = detail::split_csv_line(line);
      if (fields.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected three columns");
      }
      const double birth = detail::parse_field(fields[1], line_no);
      if (birth < prev) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": birth_time must be nondecreasing");
      }
      // Long paths can record two births at the same representable time
      // when a sojourn falls below the absolute spacing of the time column.
      // Such rows carry no recoverable duration, so they are skipped.
      if (birth > prev) data.durations.push_back(birth - prev);
      prev = birth;
    }
    return data;
  }
  throw ParseError(
      "unrecognized header: expected 'duration' or "
      "'index,birth_time,population'");
}

}  // namespace fyp

#endif  // FYP_IO_HPP_
