#include "crossres/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "crossres/errors.hpp"

namespace crossres {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  os << kComparisonHeader << '\n';
  for (const ComparisonRow& r : rows) {
    os << format_number(r.h) << ',' << r.k << ',' << to_string(r.method) << ',' << format_number(r.e_k) << ','
       << format_number(r.C) << ',' << format_number(r.predicted.real()) << ',' << format_number(r.predicted.imag())
       << ',' << format_number(r.oracle.real()) << ',' << format_number(r.oracle.imag()) << ','
       << format_number(r.res_re) << ',' << format_number(r.res_im) << ',' << format_number(r.pair_dist) << '\n';
  }
}

void write_predictions_csv(std::ostream& os, const std::vector<ResonancePrediction>& predictions) {
  os << "h,k,e_k,C,pred_re,pred_im\n";
  for (const ResonancePrediction& p : predictions)
    os << format_number(p.h) << ',' << p.k << ',' << format_number(p.e_k) << ',' << format_number(p.width_coeff) << ','
       << format_number(p.predicted.real()) << ',' << format_number(p.predicted.imag()) << '\n';
}

void write_oracle_csv(std::ostream& os, double h, const std::vector<OracleResonance>& resonances) {
  os << "h,method,theta,re,im,residual,converged,N\n";
  for (const OracleResonance& r : resonances)
    os << format_number(h) << ',' << to_string(r.method) << ',' << format_number(r.theta_used) << ','
       << format_number(r.E.real()) << ',' << format_number(r.E.imag()) << ',' << format_number(r.residual) << ','
       << (r.converged ? 1 : 0) << ',' << r.grid_meta.N << '\n';
}

std::vector<std::string> write_plot_data(const std::string& dir, const std::vector<ComparisonRow>& rows) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create plot directory '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  for (OracleMethod m : {OracleMethod::ecs, OracleMethod::wronskian}) {
    bool any = false;
    for (const ComparisonRow& r : rows) any = any || r.method == m;
    if (!any) continue;
    const std::string tag = to_string(m);
    const std::string names[3] = {"width_" + tag + ".dat", "res_re_" + tag + ".dat", "res_im_" + tag + ".dat"};
    std::ofstream files[3];
    for (int i = 0; i < 3; ++i) {
      const std::string path = (fs::path(dir) / names[i]).string();
      files[i].open(path);
      if (!files[i]) throw ConfigError("cannot write '" + path + "'");
      written.push_back(path);
    }
    files[0] << "# x=C*h^2 y=-Im(E)\n";
    files[1] << "# x=h y=|Re(E)-e_k|\n";
    files[2] << "# x=h y=|Im(E)+C*h^2|\n";
    for (const ComparisonRow& r : rows) {
      if (r.method != m) continue;
      files[0] << format_number(r.C * r.h * r.h) << ' ' << format_number(-r.oracle.imag()) << '\n';
      files[1] << format_number(r.h) << ' ' << format_number(r.res_re) << '\n';
      files[2] << format_number(r.h) << ' ' << format_number(r.res_im) << '\n';
    }
  }
  return written;
}

}  // namespace crossres
