#pragma once

#include <string>
#include <vector>

namespace binseg {

struct NamedSequence {
  std::string id;
  std::vector<double> values;
};

// Reads one CSV file with header `value`, or `sequence_id,value` in either
// column order. Rows of a multi-sequence file may interleave ids; row order
// within an id is preserved and the returned sequences are sorted by id.
// Files without an id column yield one sequence whose id is default_id (the
// file stem when empty). Bad headers, non-numeric or non-finite values throw
// ParseError naming the file and 1-based row.
std::vector<NamedSequence> read_sequence_file(const std::string& path,
                                              const std::string& default_id =
                                                  std::string());

// path may be a CSV file or a directory; a directory contributes every *.csv
// inside (non-recursive). Directory files without an id column are named by
// file stem; with an id column the sequences are named stem:id. Empty inputs
// throw ParseError.
std::vector<NamedSequence> read_sequence_input(const std::string& path);

// Round-trip formatting for all CSV output: %.17g, so reading the text back
// recovers the exact double.
std::string format_double(double v);

}  // namespace binseg
