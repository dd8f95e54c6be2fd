#include "tropbilevel/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::svg {

std::vector<TropVector> segment_vertices(const TropVector& u, const TropVector& v) {
  if (u.dim() != v.dim()) throw DimensionError("segment: dimension mismatch");
  if (!u.all_finite() || !v.all_finite()) throw UnsupportedInstance("segment: finite endpoints required");
  // p(s) = max(u + min(0, -s), v + min(0, s)) runs from u (s << 0) to v (s >> 0)
  // and is linear between consecutive breakpoints u_i - v_i and 0.
  std::set<Rational> breaks{Rational(0)};
  for (std::size_t i = 0; i < u.dim(); ++i) breaks.insert(u[i].value() - v[i].value());
  auto at = [&](const Rational& s) {
    const TropScalar lu = s > 0 ? TropScalar(Rational(-s)) : TropScalar(0);
    const TropScalar lv = s < 0 ? TropScalar(s) : TropScalar(0);
    return tmax(tscale(lu, u), tscale(lv, v));
  };
  std::vector<TropVector> out{u};
  for (const auto& s : breaks) {
    TropVector p = at(s);
    if (p != out.back()) out.push_back(std::move(p));
  }
  if (v != out.back()) out.push_back(v);
  return out;
}

namespace {

constexpr double kPanel = 360;
constexpr double kMargin = 40;
constexpr int kRaster = 72;

const char* kPieceColors[] = {"#d62728", "#1f77b4", "#2ca02c"};

struct Frame {
  double x0, x1, y0, y1;  // data box
  double left;            // panel offset

  double px(double x) const { return left + kMargin + (x - x0) / (x1 - x0) * (kPanel - 2 * kMargin); }
  double py(double y) const { return kMargin + (y1 - y) / (y1 - y0) * (kPanel - 2 * kMargin); }
};

double d(const TropScalar& s) { return s.value().get_d(); }

std::string xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

Frame frame_for(const TropPolytopeV& p, double left) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& g : p.generators()) {
    x0 = std::min(x0, d(g[0]));
    x1 = std::max(x1, d(g[0]));
    y0 = std::min(y0, d(g[1]));
    y1 = std::max(y1, d(g[1]));
  }
  const double pad = std::max({x1 - x0, y1 - y0, 1.0}) * 0.15;
  return {x0 - pad, x1 + pad, y0 - pad, y1 + pad, left};
}

Rational to_rational(double v) {
  // Every double is a dyadic rational, so this is exact.
  return Rational(v);
}

using Tint = std::function<const char*(const TropVector&)>;

void draw_hull(std::ostream& os, const TropPolytopeV& p, const Frame& f, const char* fill, const Tint& tint) {
  const double cw = (f.x1 - f.x0) / kRaster, ch = (f.y1 - f.y0) / kRaster;
  for (int i = 0; i < kRaster; ++i) {
    for (int j = 0; j < kRaster; ++j) {
      const double cx = f.x0 + (i + 0.5) * cw, cy = f.y0 + (j + 0.5) * ch;
      TropVector pt{to_rational(cx), to_rational(cy)};
      if (!contains(p, pt).member) continue;
      const char* color = tint ? tint(pt) : fill;
      os << "<rect x=\"" << num(f.px(cx - cw / 2)) << "\" y=\"" << num(f.py(cy + ch / 2)) << "\" width=\""
         << num(f.px(cx + cw / 2) - f.px(cx - cw / 2) + 0.3) << "\" height=\""
         << num(f.py(cy - ch / 2) - f.py(cy + ch / 2) + 0.3) << "\" fill=\"" << color
         << "\" fill-opacity=\"0.35\"/>\n";
    }
  }
  const auto& gens = p.generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const auto verts = segment_vertices(gens[a], gens[b]);
      for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        const TropVector mid{Rational((verts[k][0].value() + verts[k + 1][0].value()) / 2),
                             Rational((verts[k][1].value() + verts[k + 1][1].value()) / 2)};
        os << "<line x1=\"" << num(f.px(d(verts[k][0]))) << "\" y1=\"" << num(f.py(d(verts[k][1]))) << "\" x2=\""
           << num(f.px(d(verts[k + 1][0]))) << "\" y2=\"" << num(f.py(d(verts[k + 1][1]))) << "\" stroke=\""
           << (tint ? tint(mid) : "#333") << "\" stroke-width=\"2.5\" stroke-linecap=\"round\"/>\n";
      }
    }
  }
  for (const auto& g : gens) {
    os << "<circle cx=\"" << num(f.px(d(g[0]))) << "\" cy=\"" << num(f.py(d(g[1]))) << "\" r=\"4\" fill=\"#000\"/>\n";
    os << "<text x=\"" << num(f.px(d(g[0])) + 6) << "\" y=\"" << num(f.py(d(g[1])) - 6)
       << "\" font-size=\"11\">" << g.str() << "</text>\n";
  }
}

void draw_axes(std::ostream& os, const Frame& f, const std::string& title, const char* var) {
  os << "<rect x=\"" << num(f.left + kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kPanel - 2 * kMargin)
     << "\" height=\"" << num(kPanel - 2 * kMargin) << "\" fill=\"none\" stroke=\"#999\"/>\n";
  os << "<text x=\"" << num(f.left + kPanel / 2) << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" << title
     << "</text>\n";
  os << "<text x=\"" << num(f.left + kPanel - kMargin) << "\" y=\"" << num(kPanel - 12)
     << "\" font-size=\"12\" text-anchor=\"end\">" << var << "_1</text>\n";
  os << "<text x=\"" << num(f.left + 8) << "\" y=\"" << num(kMargin + 10) << "\" font-size=\"12\">" << var
     << "_2</text>\n";
}

}  // namespace

std::string render_figure(const BilevelInstance& inst) {
  if (inst.dim() != 2) throw UnsupportedInstance("figure needs dim = 2, instance has dim " + std::to_string(inst.dim()));
  if (!inst.tp1.all_finite() || !inst.tp2.all_finite())
    throw UnsupportedInstance("figure needs finite generator coordinates");

  const TropVector ymax = greatest_point(inst.tp2);
  const TropVector xs = x_star(ymax);
  const auto pieces = all_partition_pieces(inst);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(2 * kPanel + 60) << "\" height=\""
     << num(kPanel + 20 + 18 * static_cast<double>(pieces.size()))
     << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

  // TP1: cells tinted by the piece whose x-side contains them. Piece order
  // is by bitmask, so the last index is the diagonal I = {1,2}.
  const Frame f1 = frame_for(inst.tp1, 0);
  draw_axes(os, f1, "TP1 and its partition regions", "x");
  // Closed x-sides overlap on their boundaries; the piece with the largest I wins.
  draw_hull(os, inst.tp1, f1, "#aaa", [&](const TropVector& x) {
    const char* color = "#aaa";
    std::size_t best = 0;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      if (pieces[p].I.size() > best && pieces[p].contains_x(x)) {
        best = pieces[p].I.size();
        color = kPieceColors[p % 3];
      }
    }
    return color;
  });
  // Diagonal piece: x_1 - x*_1 = x_2 - x*_2.
  {
    const double off = d(xs[1]) - d(xs[0]);
    const double a = std::max(f1.x0, f1.y0 - off), b = std::min(f1.x1, f1.y1 - off);
    if (a < b)
      os << "<line x1=\"" << num(f1.px(a)) << "\" y1=\"" << num(f1.py(a + off)) << "\" x2=\"" << num(f1.px(b))
         << "\" y2=\"" << num(f1.py(b + off)) << "\" stroke=\"" << kPieceColors[2]
         << "\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
  }

  // TP2: y-side sets {y_i = ymax_i} drawn over the hull.
  const Frame f2 = frame_for(inst.tp2, kPanel);
  draw_axes(os, f2, "TP2 with y_max and y-side sets", "y");
  draw_hull(os, inst.tp2, f2, "#aaa", nullptr);
  for (std::size_t i = 0; i < 2; ++i) {
    // {y in TP2 : y_i = ymax_i} is a tropically convex slice, hence an interval.
    double lo = 1e300, hi = -1e300;
    const double span = i == 0 ? f2.y1 - f2.y0 : f2.x1 - f2.x0;
    const double base = i == 0 ? f2.y0 : f2.x0;
    for (int k = 0; k <= 4 * kRaster; ++k) {
      const double t = base + span * k / (4.0 * kRaster);
      TropVector pt = i == 0 ? TropVector{ymax[0], to_rational(t)} : TropVector{to_rational(t), ymax[1]};
      if (!contains(inst.tp2, pt).member) continue;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (lo > hi) continue;
    const double fixed = d(ymax[i]);
    const double x1 = i == 0 ? fixed : lo, y1 = i == 0 ? lo : fixed;
    const double x2 = i == 0 ? fixed : hi, y2 = i == 0 ? hi : fixed;
    os << "<line x1=\"" << num(f2.px(x1)) << "\" y1=\"" << num(f2.py(y1)) << "\" x2=\"" << num(f2.px(x2))
       << "\" y2=\"" << num(f2.py(y2)) << "\" stroke=\"" << kPieceColors[i] << "\" stroke-width=\"4\"/>\n";
  }
  os << "<circle cx=\"" << num(f2.px(d(ymax[0]))) << "\" cy=\"" << num(f2.py(d(ymax[1])))
     << "\" r=\"6\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << num(f2.px(d(ymax[0])) + 8) << "\" y=\"" << num(f2.py(d(ymax[1])) + 16)
     << "\" font-size=\"12\">y_max " << ymax.str() << "</text>\n";

  // Legend.
  double ly = kPanel + 6;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    os << "<rect x=\"20\" y=\"" << num(ly) << "\" width=\"12\" height=\"12\" fill=\""
       << kPieceColors[p % 3] << "\"/>\n";
    std::string label = "I = {";
    for (std::size_t k = 0; k < pieces[p].I.size(); ++k) label += (k ? "," : "") + std::to_string(pieces[p].I[k] + 1);
    label += "}: " + pieces[p].describe_x() + " | " + pieces[p].describe_y();
    os << "<text x=\"38\" y=\"" << num(ly + 10) << "\" font-size=\"11\">" << xml(label) << "</text>\n";
    ly += 18;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tropbilevel::svg
