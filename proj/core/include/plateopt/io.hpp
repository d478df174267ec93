#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plateopt/fem.hpp"

namespace plateopt {

/// "vertex_index,x1,x2,value" with full double precision.
void write_field_csv(std::ostream& out, const TriMesh& mesh, const NodalField& field);

/// Legacy ASCII VTK unstructured grid with one POINT_DATA scalar per field.
void write_vtk_fields(std::ostream& out, const TriMesh& mesh,
                      const std::vector<std::pair<std::string, const NodalField*>>& fields);

/// 64-bit FNV-1a of a byte sequence and of a file's contents.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ull) noexcept;
std::uint64_t file_checksum(const std::filesystem::path& path);
std::string hex64(std::uint64_t value);

}  // namespace plateopt
