#pragma once

// File formats.
//
// Grid signals use a little-endian binary container:
//   bytes 0-3   magic "BFGS"
//   u32         format version (1)
//   u32         dimension d
//   u32         n (points per axis)
//   u8          domain: 0 time, 1 frequency, 2 phase-space
//   f64 x d     spacing per axis
//   f64 x d     origin per axis
//   f64 x 2n^d  interleaved re/im, row-major (axis 0 slowest)
//
// CSV files carry a header row and one record per line; numbers are
// written with %.17g so a rewrite of the same data is byte-identical.

#include <string>
#include <vector>

#include "bf/lattice.hpp"
#include "bf/sampling.hpp"

namespace bf {

struct STFTField;  // stft.hpp

std::string format_double(double v);  // %.17g

void write_grid_signal(const std::string& path, const GridSignal& f);
GridSignal read_grid_signal(const std::string& path);

// one point per row, one column per coordinate, full precision
void write_points_csv(const std::string& path, const SeparatedSet& set);
SeparatedSet read_points_csv(const std::string& path, int dim);

// columns: coordinates, re, im
void write_signal_csv(const std::string& path, const GridSignal& f);

// columns: x..., omega..., re, im, abs
void write_stft_csv(const std::string& path, const STFTField& V);
// the field as a 2d-dimensional grid signal (domain tag phase-space)
void write_stft_container(const std::string& path, const STFTField& V);

// generic table: header + preformatted rows
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace bf
