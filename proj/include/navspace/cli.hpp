#pragma once

// Library-level implementations of the CLI subcommands so they can be
// exercised directly by tests.

#include <iosfwd>
#include <string>

#include "navspace/config.hpp"

namespace navspace::cli {

// Reads a PGM mask, runs the boundary -> polyline -> triangulation ->
// rasterization round trip, writes <prefix>_polyline.txt,
// <prefix>_triangles.txt and <prefix>_mask.pgm, and prints the IoU.
int cmd_geometry(const std::string& mask_path, int k, const std::string& out_prefix,
                 std::ostream& out, std::ostream& err);

// Edge map -> SOB filter -> EDT -> alpha clamp; writes <out>.ppm and
// <out>.txt. A negative v_thres selects v_thres_frac times the mask height.
int cmd_sedf(const std::string& mask_path, double alpha, double v_thres, double v_thres_frac,
             const std::string& out_path, std::ostream& out, std::ostream& err);

// Runs one episode in the configured environment and prints the outcome.
// When out_path is nonempty the trajectory is written there as
// "x y psi" lines.
int cmd_episode(const RunConfig& cfg, const std::string& out_path, std::ostream& out,
                std::ostream& err);

// Full alpha sweep; writes the per-episode CSV to out_csv and the
// per-(env, alpha) aggregate table next to it as <out_csv>.summary.csv.
int cmd_sweep(const RunConfig& cfg, const std::string& out_csv, std::ostream& out,
              std::ostream& err);

// Quick self-check of the loss kernels (KL, Gumbel-Softmax, SSIM
// properties) with a fixed seed.
int cmd_selftest(std::ostream& out, std::ostream& err);

}  // namespace navspace::cli
