// Copyright 2026 The bhmelt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHMELT_CSV_HPP
#define BHMELT_CSV_HPP

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "bhmelt/errors.hpp"

namespace bhmelt {

// Shortest decimal string that round-trips to the same double. Fixed across
// platforms, unlike iostream formatting, so outputs are byte-reproducible.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Row-oriented CSV writer with '\n' line endings and no trailing separator.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view header)
      : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open output file: " + path.string());
    out_ << header << '\n';
  }

  CsvWriter& field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
  }
  CsvWriter& field(int v) {
    sep();
    out_ << v;
    return *this;
  }
  CsvWriter& field(std::int64_t v) {
    sep();
    out_ << v;
    return *this;
  }
  CsvWriter& field(std::string_view v) {
    sep();
    out_ << v;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace bhmelt

#endif
