#include "eqgs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace eqgs {

nlohmann::ordered_json Viewport::to_json() const {
  return nlohmann::ordered_json{{"scale", scale}, {"tx", tx}, {"ty", ty}};
}

Vector fix_phase(const Vector& v) {
  if (v.size() == 0) return v;
  Index k = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(k)) * (1.0 + 1e-12)) k = i;
  if (std::abs(v(k)) == 0.0) return v;
  return v * (std::conj(v(k)) / std::abs(v(k)));
}

namespace {

constexpr double kPanel = 400.0;
constexpr double kMargin = 30.0;
constexpr double kTitle = 30.0;

Viewport fit(const std::vector<Point>& pts, double left) {
  Point lo = pts.empty() ? Point::Zero() : pts.front();
  Point hi = lo;
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  Viewport v;
  v.scale = (kPanel - 2 * kMargin) / span;
  const Point mid = 0.5 * (lo + hi);
  v.tx = left + kPanel / 2 - v.scale * mid.x();
  v.ty = kTitle + kPanel / 2 + v.scale * mid.y();
  return v;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string style_for(double w, double wmax) {
  if (std::abs(w) <= 1e-9 * std::max(wmax, 1e-300))
    return R"(stroke="#888888" stroke-dasharray="4 3")";
  return w > 0 ? R"(stroke="#d62728")" : R"(stroke="#1f77b4")";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgFigure render_reciprocal(const Framework& fw, const Vector& stress, const Vector& reciprocal,
                            const std::string& title) {
  const auto& cx = *fw.complex;
  SvgFigure fig;
  for (Index f = 0; f < reciprocal.size() / 2; ++f)
    fig.dual_positions.emplace_back(reciprocal(2 * f).real(), reciprocal(2 * f + 1).real());
  fig.primal = fit(fw.positions, 0.0);
  fig.dual = fit(fig.dual_positions, kPanel);

  double wmax = 0.0;
  for (Index e = 0; e < stress.size(); ++e) wmax = std::max(wmax, std::abs(stress(e).real()));

  std::ostringstream s;
  s << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << 2 * kPanel << R"(" height=")"
    << kPanel + kTitle << R"(")"
    << R"( data-primal-transform=")" << num(fig.primal.scale) << ' ' << num(fig.primal.tx) << ' '
    << num(fig.primal.ty) << '"' << R"( data-dual-transform=")" << num(fig.dual.scale) << ' '
    << num(fig.dual.tx) << ' ' << num(fig.dual.ty) << "\">\n";
  s << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
  s << R"(<text x="10" y="20" font-family="sans-serif" font-size="14">)" << escape(title)
    << "</text>\n";

  s << R"(<g id="primal" stroke-width="2">)" << "\n";
  for (Index e = 0; e < cx.count(1); ++e) {
    const Point a = fig.primal.apply(fw.positions[cx.tail(e)]);
    const Point b = fig.primal.apply(fw.positions[cx.head(e)]);
    const double w = e < stress.size() ? stress(e).real() : 0.0;
    s << R"(<line id="p-)" << escape(cx.edge_ids[e]) << R"(" x1=")" << num(a.x()) << R"(" y1=")"
      << num(a.y()) << R"(" x2=")" << num(b.x()) << R"(" y2=")" << num(b.y()) << "\" "
      << style_for(w, wmax) << "/>\n";
  }
  for (Index v = 0; v < cx.count(0); ++v) {
    const Point a = fig.primal.apply(fw.positions[v]);
    s << R"(<circle cx=")" << num(a.x()) << R"(" cy=")" << num(a.y()) << R"(" r="3" fill="black"/>)"
      << "\n";
  }
  s << "</g>\n";

  s << R"(<g id="dual" stroke-width="2">)" << "\n";
  const auto cof = cx.edge_cofaces();
  for (Index e = 0; e < cx.count(1); ++e) {
    if (cof[e].size() != 2 || fig.dual_positions.empty()) continue;
    const Point a = fig.dual.apply(fig.dual_positions[cof[e][0].cell]);
    const Point b = fig.dual.apply(fig.dual_positions[cof[e][1].cell]);
    const double w = e < stress.size() ? stress(e).real() : 0.0;
    s << R"(<line id="d-)" << escape(cx.edge_ids[e]) << R"(" x1=")" << num(a.x()) << R"(" y1=")"
      << num(a.y()) << R"(" x2=")" << num(b.x()) << R"(" y2=")" << num(b.y()) << "\" "
      << style_for(w, wmax) << "/>\n";
  }
  for (std::size_t f = 0; f < fig.dual_positions.size(); ++f) {
    const Point a = fig.dual.apply(fig.dual_positions[f]);
    s << R"(<circle id="f-)" << escape(cx.face_ids[f]) << R"(" cx=")" << num(a.x()) << R"(" cy=")"
      << num(a.y()) << R"(" r="3" fill="black"/>)" << "\n";
  }
  s << "</g>\n</svg>\n";
  fig.svg = s.str();
  return fig;
}

}  // namespace eqgs
