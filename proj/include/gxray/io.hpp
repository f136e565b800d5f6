#pragma once

#include <gxray/basis.hpp>
#include <gxray/boundary.hpp>
#include <gxray/grids.hpp>

#include <filesystem>
#include <string>

namespace gxray::io {

// All writers use 17 significant digits so that values round-trip exactly.

// header beta,alpha,re,im; rows in grid order (beta-major)
void write_sinogram_csv(const std::filesystem::path& path, const BoundaryGrid& g);
// Reads into a copy of `layout`; node coordinates must match the layout.
BoundaryGrid read_sinogram_csv(const std::filesystem::path& path, const BoundaryGrid& layout);

// header rho,omega,re,im
void write_disk_csv(const std::filesystem::path& path, const DiskGrid& f);

// header n,k,abs_inner
void write_moments_csv(const std::filesystem::path& path, const MomentReport& report);

// {"kappa":..., "nmax":..., "entries":[{"n":..,"k":..,"re":..,"im":..}]}
void write_coeffs_json(const std::filesystem::path& path, const CoeffTable& c, double kappa);
struct CoeffFile {
  double kappa;
  CoeffTable table;
};
CoeffFile read_coeffs_json(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace gxray::io
