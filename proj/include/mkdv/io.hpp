#pragma once

#include <iosfwd>
#include <string>

#include "mkdv/oracle.hpp"
#include "mkdv/phase.hpp"

namespace mkdv {

// %.17g: round-trip exact for doubles
std::string fmt_g17(double v);

// FieldSlice CSV: "# t = <value>" comment line, then "x,q" rows
void write_slice_csv(std::ostream& os, const FieldSlice& s);
FieldSlice read_slice_csv(std::istream& is);

// compact binary slice: magic "MKDV1", then little-endian u64 n and doubles
// t, x0, dx, q[0..n)
void write_slice_binary(std::ostream& os, const FieldSlice& s);
FieldSlice read_slice_binary(std::istream& is);

void write_slice_file(const std::string& path, const FieldSlice& s, bool binary);
FieldSlice read_slice_file(const std::string& path);

// header row: re_min, re_max, im_min, im_max, nx, ny; then ny rows of nx
// signs in {-1,0,1}
void write_signgrid_csv(std::ostream& os, const SignGrid& g);

}  // namespace mkdv
