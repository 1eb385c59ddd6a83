#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "crossres/compare.hpp"
#include "crossres/fit.hpp"

namespace crossres {

/// Header of the comparison table.
inline constexpr const char* kComparisonHeader = "h,k,method,e_k,C,pred_re,pred_im,orc_re,orc_im,res_re,res_im,pair_dist";

/// Full-precision (%.17g) decimal text of a double.
std::string format_number(double v);

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);
void write_predictions_csv(std::ostream& os, const std::vector<ResonancePrediction>& predictions);
void write_oracle_csv(std::ostream& os, double h, const std::vector<OracleResonance>& resonances);

/// Two-column (x y) data files for plotting, one per method:
///   width_<m>.dat     C(e_k, h) h^2 against -Im E
///   res_re_<m>.dat    h against |Re E - e_k|
///   res_im_<m>.dat    h against |Im E + C h^2|
/// Returns the paths written.
std::vector<std::string> write_plot_data(const std::string& dir, const std::vector<ComparisonRow>& rows);

}  // namespace crossres
