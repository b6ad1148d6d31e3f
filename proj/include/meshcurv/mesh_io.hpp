#pragma once

#include <iosfwd>
#include <string>

#include "meshcurv/tri_mesh.hpp"

namespace meshcurv {

/// OFF subset: "OFF" header line, counts line "n_v n_F n_e", n_v coordinate
/// lines, n_F face lines "3 i j k". '#' comments and blank lines are
/// skipped; the edge count is ignored. A malformed line fails the whole
/// parse with its line number; no partial mesh is ever returned.
TriMesh parse_off(std::istream& in);
TriMesh parse_off(const std::string& text);

/// OBJ subset: "v x y z" and "f a b c" (1-based, /vt/vn suffixes stripped,
/// negative indices resolved against the vertices defined so far). Other
/// directives are skipped.
TriMesh parse_obj(std::istream& in);
TriMesh parse_obj(const std::string& text);

/// Debug OFF writer; coordinates are printed with 17 significant digits so a
/// parse -> write -> parse round trip is bit-exact.
std::string write_off(const TriMesh& mesh);

/// Dispatches on the file extension (.off or .obj, case-insensitive).
TriMesh load_mesh(const std::string& path);

}  // namespace meshcurv
