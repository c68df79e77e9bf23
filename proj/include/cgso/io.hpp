#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgso/dense.hpp"

namespace cgso {

std::string read_text_file(const std::string& path);

// Writes through a temp file in the same directory and renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);

// Formats a double so a reparse reproduces it bit-exactly.
std::string format_double(double v);

// "node,value" rows with a header.
std::string to_node_value_csv(const std::vector<double>& values, const std::string& value_name);

// Reads a two-column CSV (optional header) of node,int rows into a dense
// vector indexed by node id.
std::vector<int> read_node_int_csv(const std::string& text, int expected_n);

// Node-major feature rows: one CSV line per node.
DenseMatrix read_features_csv(const std::string& text);

// "node,split" with split in {train,val,test}; anything else is ignored.
std::vector<int> read_mask_csv(const std::string& text, int expected_n);

} // namespace cgso
