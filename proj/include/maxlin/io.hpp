#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxlin/model.hpp"
#include "maxlin/polytrope.hpp"
#include "maxlin/scoring.hpp"
#include "maxlin/tropical.hpp"

namespace maxlin {

// All JSON and CSV formats use 1-based node labels. A matrix entry +inf is
// encoded as the string "inf"; finite values round-trip bit exactly.
//
// Pair conventions follow the file formats:
//   model edges            [src, dst, weight]   (edge src -> dst)
//   subdivision labels     [i, j]               (tight constraint x_i - x_j = c_ij,
//                                                i.e. the edge j -> i)

nlohmann::json matrix_to_json(const TropicalMatrix& C);
TropicalMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const MlbnModel& m);
MlbnModel model_from_json(const nlohmann::json& j);

nlohmann::json subdivision_to_json(const Subdivision& s);
Subdivision subdivision_from_json(const nlohmann::json& j);

nlohmann::json estimation_to_json(const EstimationResult& r);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Rectangular numeric table with named columns.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Reads a comma-separated numeric table. A non-numeric first row is taken
/// as the header; otherwise columns are named X1..Xd. Throws ParseError
/// with 1-based row/column on malformed input.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Sample file: one row per observation, d columns named X1..Xd,
/// values already normalized.
void write_sample_csv(std::ostream& out, const Sample& s);
Sample sample_from_csv(std::istream& in);

/// Column selection plus preprocessing for real-data ingestion. With
/// neg_log, rows with a nonpositive value in a selected column are dropped
/// and counted. Throws AllRowsDropped when nothing survives.
enum class Preprocess { kNone, kNegLog };
Sample sample_from_table(const CsvTable& table, const std::vector<std::string>& columns,
                         Preprocess preprocess, std::size_t* dropped_rows);

}  // namespace maxlin
