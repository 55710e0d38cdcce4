#include "ifsrep/export.hpp"

#include <cstdio>
#include <thread>

namespace ifsrep {

std::string formatDecimal(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.15g", v);
  return buffer;
}

void writeCsv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << formatDecimal(row[i]);
    out << '\n';
  }
}

void writePointSetCsv(std::ostream& out, const PointSet& points) {
  std::vector<std::string> header;
  switch (points.kind) {
    case PointSet::Kind::Real1D:
      header = {"x"};
      break;
    case PointSet::Kind::Real2D:
      header = {"x", "y"};
      break;
    case PointSet::Kind::Complex:
      header = {"re", "im"};
      break;
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(points.size()));
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    std::vector<double> row;
    for (Eigen::Index j = 0; j < points.points.cols(); ++j) row.push_back(points.points(i, j));
    rows.push_back(std::move(row));
  }
  writeCsv(out, header, rows);
}

std::vector<std::vector<double>> cdfCurve(const IFSMeasure& m, int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be at least 1");
  const Rational lo = m.system().domain().lo(0);
  const Rational step = (m.system().domain().hi(0) - lo) / grid;
  std::vector<std::vector<double>> rows;
  for (int j = 0; j <= grid; ++j) {
    const Rational x = lo + step * j;
    rows.push_back({toDouble(x), toDouble(m.cdf(x))});
  }
  return rows;
}

std::vector<std::vector<double>> staircaseCurves(int grid) {
  const IFSMeasure lambda(standardSystem("dyadic"));
  const auto third = cdfCurve(thirdCantor(), grid);
  const auto quarter = cdfCurve(quarterCantor(), grid);
  const auto flat = cdfCurve(lambda, grid);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < flat.size(); ++j) rows.push_back({flat[j][0], flat[j][1], third[j][1], quarter[j][1]});
  return rows;
}

std::vector<KernelSample> kernelGrid(const std::vector<double>& radii, int angles, int xs, double tol,
                                     unsigned workers) {
  if (angles < 1 || xs < 1) throw std::invalid_argument("kernel grid needs at least one angle and one x");
  std::vector<Complex> zs;
  for (double r : radii) {
    for (int a = 0; a < angles; ++a) zs.push_back(r * unitCircle(static_cast<double>(a) / angles));
  }
  std::vector<KernelSample> out(zs.size() * static_cast<std::size_t>(xs));
  for (const auto& z : zs) k4FactorsFor(std::abs(z), tol);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Complex z = zs[i / static_cast<std::size_t>(xs)];
      const double x = static_cast<double>(i % static_cast<std::size_t>(xs)) / xs;
      out[i] = {z, x, k4EvalTol(z, x, tol).value};
    }
  };
  workers = std::max(1u, workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (out.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(out.size(), w * chunk);
    const std::size_t end = std::min(out.size(), begin + chunk);
    threads.emplace_back(fill, begin, end);
  }
  for (auto& t : threads) t.join();
  return out;
}

void writeKernelCsv(std::ostream& out, const std::vector<KernelSample>& samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) rows.push_back({s.z.real(), s.z.imag(), s.x, s.k.real(), s.k.imag()});
  writeCsv(out, {"re_z", "im_z", "x", "re_K", "im_K"}, rows);
}

Json fractionArray(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(toString(v));
  return out;
}

Json rationalMatrixJson(const RationalMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(toString(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json scalarJson(const Rational& q) { return toString(q); }

Json scalarJson(const Cyclotomic& z) {
  const std::string s = ScalarOps<Cyclotomic>::str(z);
  const auto at = s.find('@');
  if (at != std::string::npos) return Json::array({s.substr(0, at), s.substr(at + 1)});
  if (z.isRational()) return s;
  Json coefficients = Json::array();
  for (const auto& c : z.coefficients()) coefficients.push_back(toString(c));
  return {{"order", z.order()}, {"coefficients", std::move(coefficients)}};
}

Json scalarJson(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json discreteMeasureJson(const DiscreteMeasure& mu) {
  Json out = Json::array();
  for (const auto& [x, w] : mu.atoms()) out.push_back({{"point", toString(x)}, {"weight", toString(w)}});
  return out;
}

DiscreteMeasure discreteMeasureFromJson(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a discrete measure is a JSON array");
  std::vector<std::pair<Rational, Rational>> atoms;
  for (const auto& item : j) {
    atoms.emplace_back(parseRational(item.at("point").get<std::string>()),
                       parseRational(item.at("weight").get<std::string>()));
  }
  return DiscreteMeasure(atoms);
}

}  // namespace ifsrep
