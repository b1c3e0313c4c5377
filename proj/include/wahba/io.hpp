#ifndef WAHBA_IO_HPP
#define WAHBA_IO_HPP

#include <iosfwd>
#include <string>

#include "wahba/davenport.hpp"
#include "wahba/simkit.hpp"
#include "wahba/solvers.hpp"

// File formats:
//   measurements: JSON array of {b:[x,y,z], r:[x,y,z], w:number}, or CSV with
//                 header bx,by,bz,rx,ry,rz,w
//   quaternion:   JSON 4-element array [v1, v2, v3, s]
//   solve report: JSON {method, q, lambda, iterations, residual, taste}
//   histogram:    CSV bin_lo,bin_hi,count, or JSON with config echo

namespace wahba::io {

MeasurementSet read_measurements_json(std::istream& in);
MeasurementSet read_measurements_csv(std::istream& in);
// Dispatches on extension (.csv vs anything else = JSON). Throws InputError.
MeasurementSet read_measurements_file(const std::string& path, bool renormalize = false);

std::string solve_report_json(const SolveReport& rep);
SolveReport parse_solve_report_json(const std::string& text);

std::string histogram_csv(const Histogram& h);
std::string histogram_json(const Histogram& h, const CampaignConfig& config);
Histogram parse_histogram_json(const std::string& text);

}  // namespace wahba::io

#endif  // WAHBA_IO_HPP
