/*******************************************************************************
 * Line-oriented text formats: `geograph v1` graphs, `geosys v1` neighborhood
 * systems, and distance label files.
 *
 * Readers skip lines starting with '#'. Writers put provenance comments after
 * the data so that the fixed header lines keep their positions. Reals are
 * written in shortest round-trip form.
 *
 * @file:   io.hpp
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geosssp/graph.hpp"
#include "geosssp/system.hpp"

namespace geosssp {

/// Comment lines appended after the data (without the leading '#').
using Provenance = std::vector<std::string>;

std::string format_real(double x);
double parse_real(const std::string &token);

void write_graph(std::ostream &out, const EuclideanGraph &g, const Provenance &notes = {});
EuclideanGraph read_graph(std::istream &in);

void write_system(std::ostream &out, const NeighborhoodSystem &sys, const Provenance &notes = {});
NeighborhoodSystem read_system(std::istream &in);

/// `<vertex> <dist>` per line; unreachable vertices are written as `inf`.
void write_labels(std::ostream &out, const std::vector<double> &dist);
std::vector<double> read_labels(std::istream &in);

std::string rng_provenance(std::uint64_t seed);

void save_text(const std::string &path, const std::string &content);
std::string load_text(const std::string &path);

} // namespace geosssp
