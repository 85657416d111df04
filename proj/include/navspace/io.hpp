#pragma once

// File formats: binary PGM (P5) masks, PPM (P6) heatmaps and plain-text
// matrices.

#include <string>
#include <vector>

#include "navspace/distance_field.hpp"
#include "navspace/mask_geometry.hpp"

namespace navspace::io {

// P5, maxval 255, 0 = non-navigable, 255 = navigable. Comment lines are
// permitted after the magic number. Parse failures throw std::runtime_error
// with the byte offset of the defect.
navspace::geometry::SegMask read_pgm(const std::string& bytes);
std::string write_pgm(const navspace::geometry::SegMask& mask);

navspace::geometry::SegMask load_pgm(const std::string& path);
void save_pgm(const navspace::geometry::SegMask& mask, const std::string& path);

// P6 heatmap of a scalar field normalized by its maximum, using the fixed
// blue-cyan-green-yellow-red colormap (stops at t = 0, .25, .5, .75, 1).
std::string write_ppm_heatmap(const navspace::field::DistanceField& field);
void save_ppm_heatmap(const navspace::field::DistanceField& field, const std::string& path);

// Plain-text matrix: "width height" header line, then one row per line,
// 6 significant digits.
std::string write_text_matrix(const navspace::field::DistanceField& field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace navspace::io
