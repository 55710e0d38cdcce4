#pragma once

// File formats: CSV plot data with 15 significant digits, JSON with exact
// rationals as "num/den" strings. JSON objects are emitted with sorted keys.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifsrep/boundary.hpp"
#include "ifsrep/density.hpp"
#include "ifsrep/ifs.hpp"
#include "ifsrep/measure.hpp"
#include "ifsrep/operator.hpp"

namespace ifsrep {

using Json = nlohmann::json;

/// printf %.15g
std::string formatDecimal(double v);

void writeCsv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Header x (1D), x,y (planar) or re,im (complex).
void writePointSetCsv(std::ostream& out, const PointSet& points);

/// Rows (x, F(x)) at grid + 1 equally spaced points of the domain.
std::vector<std::vector<double>> cdfCurve(const IFSMeasure& m, int grid);
/// Rows (x, F_lambda, F_1/3, F_1/4) on [0, 1].
std::vector<std::vector<double>> staircaseCurves(int grid);

struct KernelSample {
  Complex z;
  double x = 0.0;
  Complex k;
};

/// K4(z, x) on the polar grid radii x angles x points of [0, 1); points run in parallel.
std::vector<KernelSample> kernelGrid(const std::vector<double>& radii, int angles, int xs, double tol = 1e-12,
                                     unsigned workers = 1);
/// Header re_z,im_z,x,re_K,im_K.
void writeKernelCsv(std::ostream& out, const std::vector<KernelSample>& samples);

Json fractionArray(const std::vector<Rational>& values);
Json rationalMatrixJson(const RationalMatrix& m);

Json scalarJson(const Rational& q);
/// "c" for rational values, ["c", "j/n"] for c e(j/n), else the power-basis coefficients.
Json scalarJson(const Cyclotomic& z);
/// [re, im]
Json scalarJson(const std::complex<double>& z);

/// {sourceLevel, targetLevel, entries: [{row, col, value}]} in row-major order.
template <typename Scalar>
Json operatorDump(const TruncatedOperator<Scalar>& t) {
  struct Entry {
    Eigen::Index row, col;
    Json value;
  };
  std::vector<Entry> entries;
  t.forEachNonzero([&](Eigen::Index r, Eigen::Index c, const Scalar& v) { entries.push_back({r, c, scalarJson(v)}); });
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  Json list = Json::array();
  for (auto& e : entries) list.push_back({{"row", e.row}, {"col", e.col}, {"value", std::move(e.value)}});
  return {{"sourceLevel", t.sourceLevel()}, {"targetLevel", t.targetLevel()}, {"entries", std::move(list)}};
}

/// [{point, weight}]
Json discreteMeasureJson(const DiscreteMeasure& mu);
DiscreteMeasure discreteMeasureFromJson(const Json& j);

}  // namespace ifsrep
