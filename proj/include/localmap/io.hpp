#ifndef LOCALMAP_IO_HPP
#define LOCALMAP_IO_HPP

#include <string>

#include "localmap/types.hpp"

namespace localmap {

// Comma-separated values, '.' decimal point, '\n' newlines, no header row.
// When has_labels, the last column is consumed as integer class labels.
// Ragged rows, non-numeric or non-finite cells, and empty files raise Error
// with the offending row/column.
DataMatrix load_csv(const std::string& path, bool has_labels);

// Writes values with 9 significant digits; labels (when present) as a final
// integer column.
void write_csv(const std::string& path, const DataMatrix& m);

// Binary matrix format (little-endian): magic "LMAP", u32 version = 1,
// u32 n, u32 D, u8 has_labels, 3 padding bytes, n*D IEEE-754 f32 row-major,
// then (if has_labels) n i32 labels.
DataMatrix load_binary(const std::string& path);
void write_binary(const std::string& path, const DataMatrix& m);

// True when the file starts with the binary magic bytes.
bool sniff_binary(const std::string& path);

// Embedding output: one row per point, coordinates at 9 significant digits,
// optional trailing label column. No header.
void write_embedding_csv(const std::string& path, const Matrix& coords,
                         const std::vector<int>* labels);

}  // namespace localmap

#endif  // LOCALMAP_IO_HPP
