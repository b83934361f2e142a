#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tubewf/grid_signal.hpp"

namespace tubewf::io {

inline constexpr const char* kCsvVersionLine = "# tubewf-csv v1";

/// Shortest round-trip decimal form of a double ("%.17g" fallback).
std::string format_double(double v);

/// Write-to-temp-then-rename so readers never observe partial files.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// CSV schema: version line, then "dim,n,spacing,origin" header + value row
/// (d=2 origin is "x;y"), then "re,im" rows.
void write_signal_csv(const std::filesystem::path& path, const GridSignal& f);
GridSignal read_signal_csv(const std::filesystem::path& path);

/// Raw little-endian binary: 8 float64 header
/// {format=1, dim, n, spacing, origin0, origin1, 0, 0} then n^d complex64
/// (float32 re, float32 im) pairs.
void write_signal_bin(const std::filesystem::path& path, const GridSignal& f);
GridSignal read_signal_bin(const std::filesystem::path& path);

/// Plain (P2) 8-bit PGM, values mapped by log scale when log_scale is set.
/// The min/max of the pre-mapping data are returned so callers can record
/// them in the sibling CSV.
void write_pgm(const std::filesystem::path& path, int rows, int cols,
               const std::vector<double>& values, bool log_scale,
               double* out_min = nullptr, double* out_max = nullptr);

}  // namespace tubewf::io
