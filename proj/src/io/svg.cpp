#include "centroidcut/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "centroidcut/error.hpp"

namespace centroidcut::io {

namespace {

using P2 = std::pair<double, double>;

constexpr double kSize = 400.0;
constexpr double kMargin = 24.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;

  static Frame around(const std::vector<P2>& pts) {
    Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const auto& [x, y] : pts) {
      f.x0 = std::min(f.x0, x);
      f.x1 = std::max(f.x1, x);
      f.y0 = std::min(f.y0, y);
      f.y1 = std::max(f.y1, y);
    }
    if (f.x1 <= f.x0) f.x1 = f.x0 + 1.0;
    if (f.y1 <= f.y0) f.y1 = f.y0 + 1.0;
    return f;
  }

  [[nodiscard]] P2 map(const P2& p, bool keep_aspect) const {
    double sx = (kSize - 2 * kMargin) / (x1 - x0);
    double sy = (kSize - 2 * kMargin) / (y1 - y0);
    if (keep_aspect) sx = sy = std::min(sx, sy);
    return {kMargin + (p.first - x0) * sx, kSize - kMargin - (p.second - y0) * sy};
  }
};

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
         "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
}

std::string points_attr(const std::vector<P2>& pts, const Frame& f, bool aspect) {
  std::string s;
  for (const auto& p : pts) {
    const auto [x, y] = f.map(p, aspect);
    if (!s.empty()) s += ' ';
    s += num(x) + "," + num(y);
  }
  return s;
}

// Counterclockwise vertex order of a planar body.
std::vector<P2> outline(const Polytope& body) {
  if (body.dim() != 2) throw Error(ErrorCode::kBadSpec, "SVG output needs a planar body");
  std::vector<P2> pts;
  double cx = 0, cy = 0;
  for (const auto& v : body.vertices()) {
    pts.emplace_back(v[0].to_double(), v[1].to_double());
    cx += pts.back().first;
    cy += pts.back().second;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const P2& a, const P2& b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  return pts;
}

// Sutherland-Hodgman against a.x <= b.
std::vector<P2> clip(const std::vector<P2>& poly, double a0, double a1, double b) {
  std::vector<P2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    const double fp = a0 * p.first + a1 * p.second - b;
    const double fq = a0 * q.first + a1 * q.second - b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0) != (fq < 0) && fp != fq) {
      const double s = fp / (fp - fq);
      out.emplace_back(p.first + s * (q.first - p.first), p.second + s * (q.second - p.second));
    }
  }
  return out;
}

std::string centroid_dot(const Polytope& body, const Frame& f) {
  const auto& c = body.centroid();
  const auto [x, y] = f.map({c[0].to_double(), c[1].to_double()}, true);
  return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"black\"/>\n";
}

}  // namespace

std::string body_svg(const Polytope& body) {
  const auto poly = outline(body);
  const Frame f = Frame::around(poly);
  return header() + "<polygon points=\"" + points_attr(poly, f, true) +
         "\" fill=\"#dde6f0\" stroke=\"#1f3b5c\" stroke-width=\"1.5\"/>\n" + centroid_dot(body, f) + "</svg>\n";
}

std::string floating_body_svg(const Polytope& body, const FloatingBodyApprox& approx) {
  const auto poly = outline(body);
  const Frame f = Frame::around(poly);
  auto inner = poly;
  for (const auto& h : approx.halfspaces) {
    if (inner.empty()) break;
    inner = clip(inner, h.theta[0].to_double(), h.theta[1].to_double(), h.depth.t_hi.to_double());
  }
  std::string s = header() + "<polygon points=\"" + points_attr(poly, f, true) +
                  "\" fill=\"none\" stroke=\"#1f3b5c\" stroke-width=\"1.5\"/>\n";
  if (!inner.empty())
    s += "<polygon points=\"" + points_attr(inner, f, true) +
         "\" fill=\"#f0c987\" stroke=\"#a0661d\" stroke-width=\"1\"/>\n";
  s += centroid_dot(body, f);
  s += "<text x=\"8\" y=\"16\" font-size=\"12\" font-family=\"monospace\">delta = " + approx.delta.str() +
       "</text>\n</svg>\n";
  return s;
}

Curve curve(const ConcaveProfile& p, std::string label) { return {std::move(label), p.t, p.h}; }

Curve curve(const SectionProfile& p, std::string label) {
  Curve c{std::move(label), {}, {}};
  for (const auto& s : p.samples) {
    c.t.push_back(s.t.to_double());
    c.h.push_back(s.h);
  }
  return c;
}

std::string curves_svg(const std::vector<Curve>& curves) {
  static const char* colors[] = {"#1f3b5c", "#b5401f", "#2f7d32", "#7b3fa0", "#a0661d"};
  std::vector<P2> all{{0.0, 0.0}};
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.t.size(); ++i) all.emplace_back(c.t[i], c.h[i]);
  const Frame f = Frame::around(all);
  std::string s = header();
  // Axes through the origin where visible.
  const auto [ox, oy] = f.map({std::clamp(0.0, f.x0, f.x1), std::clamp(0.0, f.y0, f.y1)}, false);
  s += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(oy) + "\" x2=\"" + num(kSize - kMargin) + "\" y2=\"" +
       num(oy) + "\" stroke=\"#999\"/>\n";
  s += "<line x1=\"" + num(ox) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(ox) + "\" y2=\"" +
       num(kSize - kMargin) + "\" stroke=\"#999\"/>\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    std::vector<P2> pts;
    for (std::size_t i = 0; i < c.t.size(); ++i) pts.emplace_back(c.t[i], c.h[i]);
    const char* color = colors[k % 5];
    s += "<polyline points=\"" + points_attr(pts, f, false) + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\"/>\n";
    s += "<text x=\"" + num(kSize - 150) + "\" y=\"" + num(16.0 + 14.0 * static_cast<double>(k)) +
         "\" font-size=\"12\" font-family=\"monospace\" fill=\"" + color + "\">" + c.label + "</text>\n";
  }
  return s + "</svg>\n";
}

}  // namespace centroidcut::io
