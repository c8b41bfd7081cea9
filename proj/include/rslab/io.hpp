#pragma once

// CSV and JSON emitters. Every CSV starts with one '#'-prefixed metadata
// line, then the column header; numbers are printed with %.17g so identical
// inputs give identical bytes.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rslab/meansq.hpp"
#include "rslab/voronoi.hpp"
#include "rslab/zfun.hpp"

namespace rslab {

inline constexpr const char* kVersion = "0.1.0";

std::string format_double(double v);

struct ErrtermRow {
  double x;
  double xi;
  double delta;
  double delta1_over_x;
};

void write_errterm_csv(std::ostream& os, const std::string& meta, std::span<const ErrtermRow> rows);
void write_residual_csv(std::ostream& os, const std::string& meta, std::span<const ResidualRow> rows);
void write_zline_csv(std::ostream& os, const std::string& meta, std::span<const ZLineSample> samples);
void write_meansq_csv(std::ostream& os, const std::string& meta, std::span<const MeanSquareResult> rows);

nlohmann::json to_json(const ExponentFit& fit);
nlohmann::json to_json(const BoundsRow& row);
nlohmann::json to_json(const MeanSquareResult& r);
nlohmann::json to_json(const MainTermConstant& c);

}  // namespace rslab
