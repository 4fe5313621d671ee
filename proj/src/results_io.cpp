// Copyright 2026 The gspsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gspsim/experiment.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gspsim {
namespace {

constexpr std::string_view kMissing = "NA";

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::string(kMissing);
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string results_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    os << row.experiment << ',' << format_number(row.q) << ',' << row.m << ',' << row.metric
       << ',';
    if (row.estimate) {
      os << format_number(row.estimate->mean) << ',' << format_number(row.estimate->std_error);
    } else {
      os << kMissing << ',' << kMissing;
    }
    os << ',';
    if (row.n_equilibria) {
      os << *row.n_equilibria;
    } else {
      os << kMissing;
    }
    os << ',' << row.seed << ',';
    if (row.wall_time_ms) {
      os << format_number(*row.wall_time_ms);
    } else {
      os << kMissing;
    }
    os << '\n';
  }
  return os.str();
}

std::string fits_csv(const std::string& experiment, const ExperimentResult& result) {
  std::ostringstream os;
  os << "experiment,m,metric,n_points,degree,c0,c1,c2,c3,r_squared,argmax_q,max_value,"
        "argmin_q,min_value\n";
  for (const auto& series : result.fits) {
    os << experiment << ',' << series.m << ',' << series.metric << ','
       << series.sweep.points.size() << ',';
    const auto& fit = series.sweep.fitted;
    if (fit) {
      os << fit->degree;
      for (Eigen::Index i = 0; i < 4; ++i) {
        os << ',';
        if (i < fit->coefficients.size()) {
          os << format_number(fit->coefficients[i]);
        } else {
          os << kMissing;
        }
      }
      os << ',' << format_number(fit->r_squared);
    } else {
      os << kMissing << ",NA,NA,NA,NA," << kMissing;
    }
    for (const auto& opt : {series.maximum, series.minimum}) {
      if (opt) {
        os << ',' << format_number(opt->q) << ',' << format_number(opt->value);
      } else {
        os << ',' << kMissing << ',' << kMissing;
      }
    }
    os << '\n';
  }
  return os.str();
}

void write_results(const std::filesystem::path& directory, const std::string& experiment,
                   const ExperimentResult& result) {
  std::filesystem::create_directories(directory);
  write_file(directory / (experiment + ".csv"), results_csv(result));
  write_file(directory / (experiment + "_fits.csv"), fits_csv(experiment, result));
  if (!result.diagnostics.empty()) {
    std::string text;
    for (const auto& d : result.diagnostics) text += d + '\n';
    write_file(directory / (experiment + "_diagnostics.txt"), text);
  }
}

}  // namespace gspsim
