#pragma once

#include "cubesplit/dp.hpp"
#include "cubesplit/splitting.hpp"
#include "cubesplit/unitrade.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace cubesplit {

// Face files: one face per line, '#' starts a comment, '&' and blanks are
// ignored. An optional "n=<int> k=<int>" line is checked against the faces.
Splitting read_faces(std::istream& in);
Splitting read_faces_file(const std::string& path);
void write_faces(std::ostream& out, const Splitting& s);
void write_faces_file(const std::string& path, const Splitting& s);

// Unitrade and hypergraph files: "n=<int> k=<int>", then one block per line
// as space separated elements.
Unitrade read_unitrade(std::istream& in);
Unitrade read_unitrade_file(const std::string& path);
void write_unitrade(std::ostream& out, const Unitrade& u);

Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

// Phi files: "<edge-index>: <bits over the edge's vertices in sorted order>".
PhiAssignment read_phi(std::istream& in, const Hypergraph& h);
void write_phi(std::ostream& out, const Hypergraph& h, const PhiAssignment& phi);

} // namespace cubesplit
