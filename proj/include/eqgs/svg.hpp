#pragma once

// Side-by-side SVG of a framework (left) and a reciprocal diagram (right).
// Edges in compression (w > 0) are red, in tension blue, and zero-force edges
// dashed grey.

#include <string>
#include <vector>

#include <json.hpp>

#include "eqgs/complex.hpp"
#include "eqgs/numerics.hpp"

namespace eqgs {

/// svg = (scale * x + tx, -scale * y + ty)
struct Viewport {
  double scale = 1.0;
  double tx = 0.0;
  double ty = 0.0;

  Point apply(const Point& p) const { return {scale * p.x() + tx, -scale * p.y() + ty}; }
  nlohmann::ordered_json to_json() const;
};

struct SvgFigure {
  std::string svg;
  Viewport primal;
  Viewport dual;
  std::vector<Point> dual_positions;  // real coordinates actually drawn, per face
};

/// Rotates the phase of a complex vector so its largest entry is real and
/// positive; real vectors keep their orientation up to that sign rule.
Vector fix_phase(const Vector& v);

/// `stress` has one entry per edge; `reciprocal` two per face. Only the real
/// parts are drawn.
SvgFigure render_reciprocal(const Framework& fw, const Vector& stress, const Vector& reciprocal,
                            const std::string& title);

}  // namespace eqgs
